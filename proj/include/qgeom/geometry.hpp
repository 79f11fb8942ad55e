#pragma once

#include <map>
#include <string>
#include <vector>

#include "qgeom/sld.hpp"

namespace qgeom {

inline constexpr double kDegeneracyTol = 1e-8;

// Quantum geometric tensor entry from SLDs:
//   Q_ab = (1/4) Tr(ρ L_a L_b).
// Re Q is the Fisher metric over four; −2·Im Q is the Berry curvature.
Complex qgt(const DensityMatrix& rho,
            const ComplexMatrix& l_a,
            const ComplexMatrix& l_b);

// Fisher information matrix 𝓕_ab = Re Tr(ρ L_a L_b), symmetric PSD.
RealMatrix qfi_matrix(const DensityMatrix& rho, const SldSet& slds);

// Berry curvature from the commutator:
//   Ω_ab = (i/4) Tr(ρ [L_a, L_b]).
// Assembled from the two ordered traces so Ω_ab = −Ω_ba holds exactly; the
// real residue that should cancel between them is checked against 1e−10.
double curvature_commutator(const DensityMatrix& rho,
                            const ComplexMatrix& l_a,
                            const ComplexMatrix& l_b);

// Pairwise geometric connection table for one axis pair (a, b):
//   A_ij = ⟨ψi|∂_a ψj⟩⟨ψi|∂_b ψj⟩*
//        = ⟨ψi|∂_a ρ|ψj⟩ · conj(⟨ψi|∂_b ρ|ψj⟩) / (p_j − p_i)²,
// defined for i ≠ j with |p_i − p_j| > degeneracy_tol. Entries for closer
// pairs are undefined; reading one throws DegeneracyError naming the pair.
// The table keeps the transformed derivative matrix elements so the
// spectral routes can decide whether an undefined pair is removable.
class WilczekZeeTable {
public:
    WilczekZeeTable(const Spectrum& spec,
                    const HermitianMatrix& drho_a,
                    const HermitianMatrix& drho_b,
                    double degeneracy_tol = kDegeneracyTol);

    Eigen::Index dim() const { return p_.size(); }
    double degeneracy_tol() const { return tol_; }
    const RealVector& probabilities() const { return p_; }

    bool defined(Eigen::Index i, Eigen::Index j) const;
    Complex at(Eigen::Index i, Eigen::Index j) const;
    double real_at(Eigen::Index i, Eigen::Index j) const { return at(i, j).real(); }
    double imag_at(Eigen::Index i, Eigen::Index j) const { return at(i, j).imag(); }

    // ⟨ψi|∂ρ|ψj⟩ for each axis of the pair; exactly Hermitian by assembly.
    Complex numerator_a(Eigen::Index i, Eigen::Index j) const { return ma_(i, j); }
    Complex numerator_b(Eigen::Index i, Eigen::Index j) const { return mb_(i, j); }

private:
    void check_index(Eigen::Index i, Eigen::Index j) const;

    RealVector p_;
    ComplexMatrix ma_, mb_;
    double tol_;
};

WilczekZeeTable wilczek_zee(const Spectrum& spec,
                            const HermitianMatrix& drho_a,
                            const HermitianMatrix& drho_b,
                            double degeneracy_tol = kDegeneracyTol);

// Full-rank spectral curvature:
//   Ω_ab = −2 Σ_{i<j} (p_i − p_j)³/(p_i + p_j)² · Im A_ij.
// Pairs below the degeneracy tolerance are skipped: their cubic weight
// kills the contribution. Throws WrongBranchError for rank-deficient input.
double curvature_spectral_fullrank(const Spectrum& spec, const WilczekZeeTable& wz);

// Berry curvature of each populated eigenstate,
//   Ω(ψi) = −2 Σ_{k≠i} Im A_ik,
// where the sum runs over every other eigenvector including the kernel.
std::vector<double> eigenstate_curvatures(const Spectrum& spec,
                                          const WilczekZeeTable& wz);

// Rank-deficient spectral curvature (rank M < dim):
//   Ω_ab = Σ_i p_i Ω(ψi) + 4 Σ_{i≠j ≤ M} p_i p_j (p_i − p_j)/(p_i + p_j)² · Im A_ij.
// Degenerate populated pairs raise DegeneracyError unless both derivative
// numerators vanish, in which case the pair contributes exactly zero.
double curvature_spectral_lowrank(const Spectrum& spec, const WilczekZeeTable& wz);

// Population-weighted average of per-eigenstate curvatures, Σ_i p_i Ω(ψi).
// Keeps only the first term of the rank-deficient formula; the difference
// from the full value is the pairwise exchange term.
double curvature_average(const Spectrum& spec, const std::vector<double>& pure_curvatures);

// Everything at one parameter point: Fisher matrix, geometric tensor,
// curvature (commutator route, antisymmetric by construction), the spectral
// branch used for cross-checking, and the cross-route residuals.
struct GeometryReport {
    ParamPoint theta;
    RealMatrix qfi;
    ComplexMatrix qgt;
    RealMatrix curvature;
    std::string branch;  // "full" or "low"
    std::map<std::string, double> residuals;
};

GeometryReport geometry_report(const ParametricModel& model,
                               const ParamPoint& theta,
                               const DiffScheme& scheme = {});

} // namespace qgeom
