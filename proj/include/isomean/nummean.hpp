#pragma once

#include "isomean/frame.hpp"
#include "isomean/verdict.hpp"

#include <vector>

namespace isomean {

/// Numbers with relative weights (positive, summing to 1).
struct WeightedTuple {
    std::vector<double> xs;
    std::vector<double> ps;

    static WeightedTuple uniform(std::vector<double> xs);
    /// Throws PreconditionError when the weight invariants do not hold.
    void validate() const;
};

/// g^{-1}(sum p_i g(x_i)).
double iso_weighted_mean(const WeightedTuple& t, const GeneratorMap& g);
/// g^{-1}((1/n) sum g(x_i)).
double iso_mean(const std::vector<double>& xs, const GeneratorMap& g);

/// Relation of the g-mean to the h-mean valid for every tuple and weights
/// drawn from d. Tries the ratio criterion |g'/h'| first, then the four
/// convexity cases of g(h^{-1}) on h(d); the odd-count rule over h'/g', h, g
/// must agree whenever it applies. A sampled numeric check must agree too.
Verdict compare_number_means(const GeneratorMap& g, const GeneratorMap& h, const Interval& d);

} // namespace isomean
