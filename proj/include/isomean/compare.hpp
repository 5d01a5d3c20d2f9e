#pragma once

#include "isomean/funmean.hpp"
#include "isomean/verdict.hpp"

#include <string>

namespace isomean {

enum class Scenario { Identical, ClassI, ClassII, ClassIIIPair, Exchanged, SameIVDM, SamePVDM, ClassV, GeneralIV };

std::string to_string(Scenario s);

/// Two means of the same f: M_f|g,h (left) against M_f|G,H (right).
/// Mappings equal up to a V-scaleshift count as the same mapping.
struct ComparisonScenario {
    Function f;
    Interval fdomain;
    Frame left;
    Frame right;
    Scenario kind = Scenario::GeneralIV;

    /// Detects the scenario from the frame structure.
    static ComparisonScenario make(Function f, const Interval& fdomain, Frame left, Frame right);
};

/// Verdict of the sharpest applicable criterion, checked against the two
/// means computed numerically. Throws ContradictionError when the numbers
/// disagree with the verdict beyond 1e-7 (relative to max(1, |L|, |R|)).
Verdict compare_function_means(const ComparisonScenario& s, const MeanOptions& opt = {});

/// Integral of f w over integral of w: the class II mean with the
/// antiderivative of w as independent-variable mapping.
MeanResult first_mvt_mean(const Expr& f, const Expr& weight, const Interval& d, const MeanOptions& opt = {});

} // namespace isomean
