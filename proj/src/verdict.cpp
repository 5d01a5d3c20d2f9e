#include "isomean/verdict.hpp"

#include <cmath>
#include <sstream>

namespace isomean {

std::string to_string(Relation r) {
    switch (r) {
    case Relation::GE:
        return "GE";
    case Relation::LE:
        return "LE";
    case Relation::GT:
        return "GT";
    case Relation::LT:
        return "LT";
    case Relation::EQ:
        return "EQ";
    case Relation::Undecided:
        break;
    }
    return "Undecided";
}

Relation mirrored(Relation r) {
    switch (r) {
    case Relation::GE:
        return Relation::LE;
    case Relation::LE:
        return Relation::GE;
    case Relation::GT:
        return Relation::LT;
    case Relation::LT:
        return Relation::GT;
    default:
        return r;
    }
}

std::string Verdict::summary() const {
    std::ostringstream out;
    out << to_string(relation);
    if (!criterion.empty()) {
        out << " by " << criterion;
        if (case_number)
            out << " case " << case_number;
    }
    if (!corroborated_by.empty()) {
        out << " (also";
        for (const auto& c : corroborated_by)
            out << ' ' << c;
        out << ')';
    }
    return out.str();
}

bool implies(Relation got, Relation want) noexcept {
    if (got == want)
        return true;
    switch (want) {
    case Relation::GE:
        return got == Relation::GT || got == Relation::EQ;
    case Relation::LE:
        return got == Relation::LT || got == Relation::EQ;
    default:
        return false;
    }
}

bool satisfies(Relation rel, double l, double r, double tol) noexcept {
    switch (rel) {
    case Relation::GE:
    case Relation::GT:
        return l >= r - tol;
    case Relation::LE:
    case Relation::LT:
        return l <= r + tol;
    case Relation::EQ:
        return std::abs(l - r) <= tol;
    case Relation::Undecided:
        break;
    }
    return true;
}

} // namespace isomean
