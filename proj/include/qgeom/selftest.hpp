#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qgeom {

// Randomized cross-validation of the whole pipeline: solver residuals,
// oracle agreement, route equivalence, closed forms, structural identities,
// and the measurement trade-off bounds. Each property reports its worst
// residual against its tolerance.
struct PropertyResult {
    std::string name;
    int trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SelftestOptions {
    std::uint64_t seed = 20240817;
    int trials = 200;
    // Replaces every property tolerance when set. Meant for checking that
    // the harness actually fails: an absurdly small value must go red.
    std::optional<double> tol_override;
};

std::vector<PropertyResult> run_selftest(const SelftestOptions& options);

} // namespace qgeom
