#pragma once

#include <cstddef>
#include <functional>

namespace isomean {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    /// Cap on interval subdivisions; 0 means the default (ISOMEAN_MAX_SUBDIV or 10^6).
    std::size_t max_subdivisions = 0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t subdivisions = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Subdivision cap from ISOMEAN_MAX_SUBDIV, or 10^6.
std::size_t default_max_subdivisions();

/// Adaptive Gauss-Kronrod (10/21) quadrature with global error-priority
/// subdivision. Endpoints are never evaluated, so integrable endpoint
/// singularities are tolerated. Infinite limits are mapped to a finite range.
/// The final sum is taken pairwise over intervals ordered by left endpoint,
/// so the result does not depend on the subdivision order.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt = {});

} // namespace isomean
