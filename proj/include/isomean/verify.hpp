#pragma once

#include <optional>
#include <string>
#include <vector>

namespace isomean {

/// One golden check: its worst residual against the tolerance it must meet.
struct CheckResult {
    std::string name;
    std::string group;
    int criterion = 0;
    bool passed = false;
    double residual = 0.0;
    double tolerance = 0.0;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyOptions {
    /// Groups or check names to run; empty runs everything.
    std::vector<std::string> only;
    /// Overrides both quadrature tolerances of every mean computed.
    std::optional<double> quad_tolerance;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
};

/// Check groups in criterion order: geometric, elastic, stolarsky,
/// identities, cauchy, comparison, g-vs-e, properties, undecidable.
const std::vector<std::string>& verify_groups();

/// Runs the selected checks. Exceptions inside a check fail that check.
/// Throws PreconditionError for an unknown --only entry.
VerifyReport run_verification(const VerifyOptions& opt = {});

} // namespace isomean
