#pragma once

#include <vector>

#include "qgeom/matrix.hpp"

namespace qgeom {

inline constexpr double kDensityTol = 1e-10;
inline constexpr double kRankTol = 1e-12;

// Unit-trace positive-semidefinite Hermitian matrix. Construct through
// validate_density so invalid inputs are reported with full diagnostics.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    friend DensityMatrix validate_density(const ComplexMatrix&, double);
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

// Checks hermiticity, unit trace, and positivity (eigenvalues ≥ −tol).
// On failure throws ValidationError listing every violated invariant with
// its measured residual, not just the first one.
DensityMatrix validate_density(const ComplexMatrix& m, double tol = kDensityTol);

// Eigendecomposition of a state: probabilities descending, eigenvalues in
// (−tol, 0) clamped to zero, rank = #{p > rank_tol}.
struct Spectrum {
    RealVector probabilities;
    ComplexMatrix eigenstates;  // columns
    Eigen::Index rank = 0;
    double rank_tol = kRankTol;

    Eigen::Index dim() const { return probabilities.size(); }
    bool full_rank() const { return rank == dim(); }
    ComplexMatrix reconstruct() const;
};

Spectrum spectral_decompose(const DensityMatrix& rho, double rank_tol = kRankTol);

// Positive operator-valued measure: elements PSD, summing to the identity.
// Both conditions are validated on construction.
class Povm {
public:
    explicit Povm(std::vector<ComplexMatrix> elements, double tol = kDensityTol);

    const std::vector<ComplexMatrix>& elements() const { return elements_; }
    Eigen::Index dim() const { return elements_.front().rows(); }
    std::size_t size() const { return elements_.size(); }

private:
    std::vector<ComplexMatrix> elements_;
};

// q_m = Tr(ρ Π_m), clamped at zero (inputs are validated, so any negative
// value is round-off). The vector sums to one within 1e−10.
RealVector born_probabilities(const DensityMatrix& rho, const Povm& povm);

} // namespace qgeom
