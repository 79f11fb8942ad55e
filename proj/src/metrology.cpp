#include "qgeom/metrology.hpp"

#include <cmath>
#include <sstream>

#include "qgeom/sld.hpp"

namespace qgeom {

namespace {

RealVector born_at(const ParametricModel& model,
                   const Povm& povm,
                   const ParamPoint& theta) {
    return born_probabilities(model.evaluate(theta), povm);
}

// Central difference of the outcome probabilities as scalars. Differencing
// the state and then tracing would smuggle the operator pipeline into what
// is meant to be an independent classical quantity.
RealVector q_central(const ParametricModel& model,
                     const Povm& povm,
                     const ParamPoint& theta,
                     int axis,
                     double step) {
    ParamPoint up = theta;
    ParamPoint down = theta;
    up[axis] += step;
    down[axis] -= step;
    return (born_at(model, povm, up) - born_at(model, povm, down)) / (2.0 * step);
}

} // namespace

CfiEstimate classical_fisher(const ParametricModel& model,
                             const Povm& povm,
                             const ParamPoint& theta,
                             int axis,
                             const DiffScheme& scheme,
                             double prob_floor) {
    if (axis < 0 || axis >= model.param_count()) {
        std::ostringstream msg;
        msg << "classical_fisher: axis " << axis << " out of range [0, "
            << model.param_count() << ")";
        throw RangeError(msg.str());
    }
    if (!(scheme.step >= 1e-9 && scheme.step <= 1e-2)) {
        std::ostringstream msg;
        msg << "classical_fisher: step " << scheme.step << " outside [1e-09, 0.01]";
        throw RangeError(msg.str());
    }
    if (prob_floor <= 0.0) {
        throw RangeError("classical_fisher: probability floor must be positive");
    }

    const RealVector q = born_at(model, povm, theta);
    RealVector dq = q_central(model, povm, theta, axis, scheme.step);
    if (scheme.method == DiffMethod::richardson) {
        const RealVector dq_half =
            q_central(model, povm, theta, axis, 0.5 * scheme.step);
        dq = (4.0 * dq_half - dq) / 3.0;
    }

    CfiEstimate out;
    int used = 0;
    for (Eigen::Index m = 0; m < q.size(); ++m) {
        if (q[m] <= prob_floor) {
            ++out.floored_outcomes;
            // A vanishing outcome whose probability still moves first order
            // makes (∂q)²/q blow up: the distribution is singular here.
            if (std::abs(dq[m]) > 1e-6) out.singular = true;
            continue;
        }
        out.value += dq[m] * dq[m] / q[m];
        ++used;
    }
    if (used == 0) {
        std::ostringstream msg;
        msg << "classical_fisher: all " << q.size()
            << " outcomes fall below the probability floor " << prob_floor;
        throw DegenerateMeasurementError(msg.str());
    }
    return out;
}

double regret(double qfi, double cfi) {
    if (!(qfi > 0.0)) {
        std::ostringstream msg;
        msg << "regret: undefined for quantum Fisher information " << qfi;
        throw UndefinedRegretError(msg.str());
    }
    if (cfi > qfi + 1e-9) {
        std::ostringstream msg;
        msg << "regret: classical information " << cfi << " exceeds the quantum bound "
            << qfi << "; upstream numerics are broken";
        throw MonotonicityError(msg.str());
    }
    const double value = (qfi - cfi) / qfi;
    return std::min(1.0, std::max(0.0, value));
}

double c_squared(double im_ll, double qfi_a, double qfi_b) {
    if (!(qfi_a > 0.0) || !(qfi_b > 0.0)) {
        std::ostringstream msg;
        msg << "c_squared: undefined for information values " << qfi_a << ", " << qfi_b;
        throw UndefinedRegretError(msg.str());
    }
    const double value = (im_ll * im_ll) / (qfi_a * qfi_b);
    if (value > 1.0 + 1e-9) {
        std::ostringstream msg;
        msg << "c_squared: " << value << " exceeds 1 beyond tolerance";
        throw NumericError(msg.str());
    }
    return std::min(1.0, value);
}

namespace {

double guarded_sqrt(double x, bool& clamped) {
    if (x < 0.0) {
        if (x < kSlackFloor) {
            std::ostringstream msg;
            msg << "tradeoff_audit: square-root argument " << x
                << " is negative beyond tolerance";
            throw NumericError(msg.str());
        }
        clamped = true;
        return 0.0;
    }
    return std::sqrt(x);
}

} // namespace

TradeoffAudit tradeoff_audit(const ParametricModel& model,
                             const Povm& povm,
                             const ParamPoint& theta,
                             std::pair<int, int> axes,
                             const DiffScheme& scheme) {
    const auto [a, b] = axes;
    if (a == b || a < 0 || b < 0 || a >= model.param_count() ||
        b >= model.param_count()) {
        std::ostringstream msg;
        msg << "tradeoff_audit: invalid axis pair (" << a << ", " << b << ")";
        throw RangeError(msg.str());
    }

    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta, scheme);
    const RealMatrix f = qfi_matrix(rho, slds);
    const LLExpectation ll =
        sld_expectations(rho, slds.operators[a], slds.operators[b]);

    TradeoffAudit audit;
    audit.qfi_a = f(a, a);
    audit.qfi_b = f(b, b);
    audit.cfi_a = classical_fisher(model, povm, theta, a, scheme).value;
    audit.cfi_b = classical_fisher(model, povm, theta, b, scheme).value;
    audit.regret_a = regret(audit.qfi_a, audit.cfi_a);
    audit.regret_b = regret(audit.qfi_b, audit.cfi_b);
    audit.c2 = c_squared(ll.im, audit.qfi_a, audit.qfi_b);
    audit.curvature = -0.5 * ll.im;

    // Δ_a² + Δ_b² + 2√(1−C²)·Δ_aΔ_b ≥ C²
    const double da = std::sqrt(audit.regret_a);
    const double db = std::sqrt(audit.regret_b);
    const double root = guarded_sqrt(1.0 - audit.c2, audit.sqrt_clamped);
    audit.regret_form.lhs =
        audit.regret_a + audit.regret_b + 2.0 * root * da * db;
    audit.regret_form.rhs = audit.c2;
    audit.regret_form.slack = audit.regret_form.lhs - audit.regret_form.rhs;

    // Same bound scaled by 𝓕_a𝓕_b, in terms of the unnormalized gaps
    // δ² = 𝓕 − F and the curvature (|Im⟨L_aL_b⟩|² = 4Ω²).
    const double gap_a = std::max(0.0, audit.qfi_a - audit.cfi_a);
    const double gap_b = std::max(0.0, audit.qfi_b - audit.cfi_b);
    const double four_omega_sq = 4.0 * audit.curvature * audit.curvature;
    const double scaled_root = guarded_sqrt(
        audit.qfi_a * audit.qfi_b - four_omega_sq, audit.sqrt_clamped);
    audit.scaled_form.lhs = audit.qfi_b * gap_a + audit.qfi_a * gap_b +
                            2.0 * std::sqrt(gap_a) * std::sqrt(gap_b) * scaled_root;
    audit.scaled_form.rhs = four_omega_sq;
    audit.scaled_form.slack = audit.scaled_form.lhs - audit.scaled_form.rhs;

    audit.product_slack = audit.qfi_a * audit.qfi_b - four_omega_sq;
    return audit;
}

} // namespace qgeom
