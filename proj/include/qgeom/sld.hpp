#pragma once

#include <vector>

#include "qgeom/model.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

inline constexpr double kSupportTol = 1e-11;
inline constexpr double kConsistencyTol = 1e-8;
inline constexpr double kSldResidualTol = 1e-10;

// Symmetric logarithmic derivative: the Hermitian solution L of
//   ∂ρ = (Lρ + ρL)/2.
// In the eigenbasis of ρ, L_jk = 2 ⟨ψj|∂ρ|ψk⟩ / (p_j + p_k) whenever
// p_j + p_k > support_tol. The kernel–kernel block is unconstrained by the
// equation; we fix the minimal-norm gauge by zeroing it. If ∂ρ has weight
// in that block beyond consistency_tol the derivative cannot belong to the
// family and InconsistentDerivativeError is thrown.
struct SldSolution {
    ComplexMatrix op;
    double residual = 0.0;  // ‖∂ρ − (Lρ+ρL)/2‖_F against the reconstructed ρ
};

SldSolution solve_sld_detailed(const Spectrum& spec,
                               const HermitianMatrix& drho,
                               double support_tol = kSupportTol,
                               double consistency_tol = kConsistencyTol);

ComplexMatrix solve_sld(const Spectrum& spec,
                        const HermitianMatrix& drho,
                        double support_tol = kSupportTol,
                        double consistency_tol = kConsistencyTol);

// Rank-1 shortcut: for pure states L = 2∂ρ solves the equation exactly
// (in the minimal-norm gauge) whenever ∂ρ is a valid pure-family derivative.
ComplexMatrix sld_pure_shortcut(const HermitianMatrix& drho);

// One SLD per parameter axis, plus the spectrum they were built from and
// the per-axis defect ‖∂ρ − (Lρ+ρL)/2‖_F.
struct SldSet {
    std::vector<ComplexMatrix> operators;
    Spectrum spectrum;
    std::vector<double> residuals;
};

SldSet solve_sld_set(const ParametricModel& model,
                     const ParamPoint& theta,
                     const DiffScheme& scheme = {});

// Tr(ρ L_a L_b) split into real and imaginary parts. The imaginary part is
// cross-checked against −(i/2)Tr(ρ[L_a, L_b]); disagreement beyond 1e−10
// means the inputs are numerically broken and raises NumericError.
struct LLExpectation {
    double re = 0.0;
    double im = 0.0;
};

LLExpectation sld_expectations(const DensityMatrix& rho,
                               const ComplexMatrix& l_a,
                               const ComplexMatrix& l_b);

} // namespace qgeom
