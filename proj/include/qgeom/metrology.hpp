#pragma once

#include <utility>

#include "qgeom/geometry.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

inline constexpr double kProbFloor = 1e-12;
inline constexpr double kSlackFloor = -1e-9;

// Classical Fisher information of the Born distribution q_m(θ) = Tr(ρΠ_m):
//   F_a = Σ_m (∂_a q_m)² / q_m,
// with the probability derivatives obtained by differencing the scalars
// q_m(θ) directly. Outcomes with q_m ≤ prob_floor are excluded; when such
// an outcome still carries a non-negligible derivative the distribution is
// genuinely singular there and the result is flagged.
struct CfiEstimate {
    double value = 0.0;
    int floored_outcomes = 0;
    bool singular = false;
};

CfiEstimate classical_fisher(const ParametricModel& model,
                             const Povm& povm,
                             const ParamPoint& theta,
                             int axis,
                             const DiffScheme& scheme = {},
                             double prob_floor = kProbFloor);

// Normalized information regret Δ² = (𝓕 − F)/𝓕 ∈ [0, 1].
// qfi ≤ 0 is undefined; cfi > qfi beyond 1e−9 signals an upstream bug.
double regret(double qfi, double cfi);

// Incompatibility coefficient C² = |Im⟨L_a L_b⟩|² / (𝓕_a 𝓕_b) ∈ [0, 1].
// Values outside by more than 1e−9 are errors; closer overshoots clamp.
double c_squared(double im_ll, double qfi_a, double qfi_b);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // lhs − rhs, ≥ 0 up to round-off when the bound holds
};

// Joint audit of the measurement trade-off at one point, for one axis pair.
//
// regret_form:  Δ_a² + Δ_b² + 2√(1−C²) Δ_a Δ_b ≥ C²
// scaled_form:  𝓕_b δ_a² + 𝓕_a δ_b² + 2 δ_a δ_b √(𝓕_a𝓕_b − 4Ω²) ≥ 4Ω²
//               with δ_a² = 𝓕_a − F_a (the regret form times 𝓕_a𝓕_b)
// product_slack: 𝓕_a𝓕_b − 4Ω² ≥ 0
//
// Square-root arguments pushed below zero by round-off are clamped at zero
// when within 1e−9 and flagged; anything larger is a NumericError.
struct TradeoffAudit {
    double qfi_a = 0.0, qfi_b = 0.0;
    double cfi_a = 0.0, cfi_b = 0.0;
    double regret_a = 0.0, regret_b = 0.0;
    double c2 = 0.0;
    double curvature = 0.0;
    InequalityCheck regret_form;
    InequalityCheck scaled_form;
    double product_slack = 0.0;
    bool sqrt_clamped = false;
};

TradeoffAudit tradeoff_audit(const ParametricModel& model,
                             const Povm& povm,
                             const ParamPoint& theta,
                             std::pair<int, int> axes = {0, 1},
                             const DiffScheme& scheme = {});

} // namespace qgeom
