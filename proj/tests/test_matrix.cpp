#include "doctest.h"

#include <complex>

#include "qgeom/matrix.hpp"

using namespace qgeom;
using namespace std::complex_literals;

TEST_CASE("hermiticity defect is zero for Pauli matrices") {
    CHECK(hermiticity_defect(pauli_x()) == 0.0);
    CHECK(hermiticity_defect(pauli_y()) == 0.0);
    CHECK(hermiticity_defect(pauli_z()) == 0.0);
}

TEST_CASE("hermiticity defect measures the anti-Hermitian part") {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.5 + 0.25i, 0.5 - 0.25i, 2.0;
    CHECK(hermiticity_defect(m) == doctest::Approx(0.0));
    m(0, 1) = 0.5 + 0.35i;  // breaks conjugate symmetry by 0.1i in one pair
    CHECK(hermiticity_defect(m) == doctest::Approx(std::sqrt(2.0) * 0.1));
}

TEST_CASE("HermitianMatrix rejects visibly non-Hermitian input") {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.5, 0.3, 2.0;
    CHECK_THROWS_AS(HermitianMatrix{m}, HermiticityError);
}

TEST_CASE("HermitianMatrix accepts round-off-level asymmetry") {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.5 + 1e-14i, 0.5, 2.0;
    CHECK_NOTHROW(HermitianMatrix{m});
}

TEST_CASE("symmetrized projects onto the Hermitian part") {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0 + 1.0i, 0.0, 2.0;
    HermitianMatrix h = HermitianMatrix::symmetrized(m);
    ComplexMatrix expect(2, 2);
    expect << 1.0, 0.5 + 0.5i, 0.5 - 0.5i, 2.0;
    CHECK(frobenius_distance(h.matrix(), expect) == doctest::Approx(0.0));
}

TEST_CASE("rectangular input is rejected") {
    ComplexMatrix m(2, 3);
    m.setZero();
    CHECK_THROWS_AS(HermitianMatrix{m}, ShapeError);
}

TEST_CASE("eigendecomposition of sigma_z is exact with descending values") {
    EigenSystem es = eig_hermitian(HermitianMatrix(pauli_z()));
    CHECK(es.values(0) == doctest::Approx(1.0));
    CHECK(es.values(1) == doctest::Approx(-1.0));
    // columns reconstruct the matrix
    ComplexMatrix rebuilt =
        es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
    CHECK(frobenius_distance(rebuilt, pauli_z()) <= 1e-14);
}

TEST_CASE("eigendecomposition of sigma_x splits +1/-1 along (1,±1)/sqrt2") {
    EigenSystem es = eig_hermitian(HermitianMatrix(pauli_x()));
    CHECK(es.values(0) == doctest::Approx(1.0));
    CHECK(es.values(1) == doctest::Approx(-1.0));
    // eigenvector for +1 has equal-magnitude components
    CHECK(std::abs(es.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(es.vectors(1, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    // orthonormality
    ComplexMatrix gram = es.vectors.adjoint() * es.vectors;
    CHECK(frobenius_distance(gram, ComplexMatrix::Identity(2, 2)) <= 1e-14);
}

TEST_CASE("degenerate eigenproblems are resolved identically on repeat calls") {
    ComplexMatrix m(3, 3);
    m.setZero();
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(2, 2) = 0.1;
    EigenSystem a = eig_hermitian(HermitianMatrix(m));
    EigenSystem b = eig_hermitian(HermitianMatrix(m));
    CHECK((a.values - b.values).norm() == 0.0);
    CHECK(frobenius_distance(a.vectors, b.vectors) == 0.0);
}

TEST_CASE("frobenius_distance is a norm of the difference") {
    ComplexMatrix a = pauli_x();
    ComplexMatrix b = pauli_y();
    CHECK(frobenius_distance(a, a) == 0.0);
    CHECK(frobenius_distance(a, b) == doctest::Approx((a - b).norm()));
}
