#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qgeom/errors.hpp"

namespace qgeom {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;

// ‖M − M†‖_F. Zero for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Square matrix checked to be Hermitian on construction:
// ‖M − M†‖_F ≤ tol·max(1, ‖M‖_F). Use symmetrized() to project instead.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m, double tol = kHermiticityTol);

    // (M + M†)/2 without a tolerance check, for matrices that are Hermitian
    // up to round-off by construction (finite differences, products).
    static HermitianMatrix symmetrized(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    struct Projected {};
    HermitianMatrix(ComplexMatrix m, Projected);

    ComplexMatrix mat_;
};

struct EigenSystem {
    RealVector values;      // descending
    ComplexMatrix vectors;  // orthonormal columns, vectors.col(i) ↔ values[i]
};

// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
// Degenerate groups are ordered by a deterministic secondary key on the
// eigenvector entries so identical inputs always produce identical output.
EigenSystem eig_hermitian(const HermitianMatrix& h);

// Pauli basis and 2x2 identity.
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& identity2();

} // namespace qgeom
