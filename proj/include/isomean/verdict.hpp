#pragma once

#include <optional>
#include <string>
#include <vector>

namespace isomean {

/// Relation of the left mean to the right mean.
enum class Relation { GE, LE, GT, LT, EQ, Undecided };

std::string to_string(Relation r);
/// The relation seen from the other side (GE <-> LE, GT <-> LT).
Relation mirrored(Relation r);

/// Outcome of a comparison together with the criterion that justified it.
struct Verdict {
    Relation relation = Relation::Undecided;
    /// Descriptive criterion id, e.g. "class-II-ratio" (empty when undecided).
    std::string criterion;
    /// Case of the criterion that fired (0 when not applicable).
    int case_number = 0;
    /// Number-mean verdicts: equality only for all-equal tuples.
    bool strict_when_distinct = false;
    /// Sample count behind the monotonicity/convexity evidence.
    int resolution = 0;
    /// Other criteria that reached the same relation.
    std::vector<std::string> corroborated_by;
    std::vector<std::string> notes;
    /// Numeric cross-check values, when computed.
    std::optional<double> left;
    std::optional<double> right;
    double tolerance = 0.0;

    bool decided() const noexcept { return relation != Relation::Undecided; }
    std::string summary() const;
};

/// True when `got` is at least as strong as `want` (GT implies GE, EQ implies
/// GE and LE).
bool implies(Relation got, Relation want) noexcept;

/// True when l and r satisfy `rel` within `tol`. Undecided is always satisfied.
bool satisfies(Relation rel, double l, double r, double tol) noexcept;

} // namespace isomean
