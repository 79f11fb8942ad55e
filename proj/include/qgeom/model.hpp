#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qgeom/state.hpp"

namespace qgeom {

// Point in parameter space. Entries must be finite.
using ParamPoint = Eigen::VectorXd;

enum class DiffMethod { central, richardson };

// Finite-difference policy for ∂_α ρ. `central` is the two-point stencil
// with O(ε²) error; `richardson` combines steps ε and ε/2 for O(ε⁴).
// When a model carries analytic derivatives they are preferred unless
// force_numeric is set.
struct DiffScheme {
    DiffMethod method = DiffMethod::central;
    double step = 1e-5;          // admissible range [1e-9, 1e-2]
    bool force_numeric = false;
};

// A parametric family of density matrices θ ↦ ρ(θ). Immutable; evaluation
// and differentiation are const and safe to call concurrently.
class ParametricModel {
public:
    using Evaluator = std::function<DensityMatrix(const ParamPoint&)>;
    using AnalyticDerivative =
        std::function<HermitianMatrix(const ParamPoint&, int axis)>;

    ParametricModel(std::string name,
                    Eigen::Index dim,
                    std::vector<std::string> param_names,
                    Evaluator evaluate,
                    AnalyticDerivative analytic = nullptr,
                    std::map<std::string, double> metadata = {});

    const std::string& name() const { return name_; }
    Eigen::Index dim() const { return dim_; }
    int param_count() const { return static_cast<int>(param_names_.size()); }
    const std::vector<std::string>& param_names() const { return param_names_; }
    bool has_analytic_derivative() const { return analytic_ != nullptr; }
    const std::map<std::string, double>& metadata() const { return metadata_; }

    DensityMatrix evaluate(const ParamPoint& theta) const;
    HermitianMatrix analytic_derivative(const ParamPoint& theta, int axis) const;

private:
    void check_point(const ParamPoint& theta) const;

    std::string name_;
    Eigen::Index dim_;
    std::vector<std::string> param_names_;
    Evaluator evaluate_;
    AnalyticDerivative analytic_;
    std::map<std::string, double> metadata_;
};

DensityMatrix evaluate(const ParametricModel& model, const ParamPoint& theta);

// ∂_axis ρ at θ. Uses the model's analytic derivative when present (unless
// the scheme forces differencing); otherwise differences evaluate().
// The numeric result is symmetrized and trace-projected, since the exact
// derivative of a unit-trace Hermitian family has both properties.
// Throws StepUnderflowError when the two-step consistency check shows the
// quotient is round-off noise, RangeError for steps outside [1e-9, 1e-2].
HermitianMatrix derivative(const ParametricModel& model,
                           const ParamPoint& theta,
                           int axis,
                           const DiffScheme& scheme = {});

namespace models {

// Pure qubit chart: ρ(θ, φ) = |n⟩⟨n| with
// n = (sinθ cosφ, sinθ sinφ, cosθ). Parameters ("theta", "phi").
ParametricModel pure_bloch();

// Fixed-radius mixed qubit: ρ = (I + r n(θ, φ)·σ)/2, r ∈ [0, 1).
ParametricModel mixed_bloch(double r);

// ρ(α, β) = U ρ0 U† with U = exp(−iαG1)·exp(−iβG2).
// Parameters ("alpha", "beta"); derivatives are analytic commutators.
ParametricModel unitary_family(const DensityMatrix& rho0,
                               const HermitianMatrix& g1,
                               const HermitianMatrix& g2);

// mixed_bloch(r) occupying the top-left 2×2 block of an n×n state, n ≥ 3.
// Rank 2 by construction, so it exercises the rank-deficient code paths.
ParametricModel embedded_qubit(Eigen::Index n, double r);

// θ-independent state; derivative is exactly zero. Test helper.
ParametricModel constant(const DensityMatrix& rho, int param_count = 1);

} // namespace models

} // namespace qgeom
