#pragma once

#include <utility>

#include "qgeom/model.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

// Independent reference implementations used to cross-check the main
// routes. They share no assembly or differencing code with them: the SLD
// oracle solves the superoperator system directly, the information oracle
// differences fidelities, the curvature oracle multiplies overlap phases.
namespace oracle {

inline constexpr double kSvCutoff = 1e-11;

// Minimal-norm least-squares solution of the vectorized equation
//   (1/2)(I⊗ρ + ρᵀ⊗I) vec(L) = vec(∂ρ),
// with singular values below sv_cutoff dropped, then symmetrized.
// Throws InconsistentDerivativeError when the superoperator residual
// exceeds 1e−8 (∂ρ not reachable from this state).
ComplexMatrix sld_vec_solve(const DensityMatrix& rho,
                            const HermitianMatrix& drho,
                            double sv_cutoff = kSvCutoff);

// Uhlmann fidelity F = Tr√(√ρ σ √ρ).
double bures_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Fisher information from the fidelity drop along one axis:
//   𝓕_a ≈ 8(1 − F(ρ(θ), ρ(θ + ε e_a)))/ε²,
// extrapolated over steps ε and ε/2. Requires a full-rank state at θ;
// otherwise throws UnsupportedOracleError.
double qfi_fidelity(const ParametricModel& model,
                    const ParamPoint& theta,
                    int axis,
                    double eps);

// Berry curvature of a rank-1 family from the phase of the overlap product
// around an ε×ε plaquette in the (a, b) plane:
//   Ω_ab = −arg(⟨ψ00|ψ10⟩⟨ψ10|ψ11⟩⟨ψ11|ψ01⟩⟨ψ01|ψ00⟩)/ε².
// ε must lie in [1e−4, 1e−2]; near-orthogonal neighbours mean the
// plaquette is too coarse and raise NumericError.
double curvature_finite_loop_pure(const ParametricModel& model,
                                  const ParamPoint& theta,
                                  std::pair<int, int> axes,
                                  double eps);

} // namespace oracle
} // namespace qgeom
