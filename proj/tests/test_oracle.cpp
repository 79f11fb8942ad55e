#include "doctest.h"

#include <cmath>
#include <complex>

#include "qgeom/matrix.hpp"
#include "qgeom/model.hpp"
#include "qgeom/oracle.hpp"
#include "qgeom/sld.hpp"
#include "qgeom/state.hpp"

using namespace qgeom;
using namespace std::complex_literals;

namespace {

ParamPoint point2(double a, double b) {
    ParamPoint p(2);
    p << a, b;
    return p;
}

DensityMatrix diag_state(std::initializer_list<double> probs) {
    const Eigen::Index n = static_cast<Eigen::Index>(probs.size());
    ComplexMatrix m(n, n);
    m.setZero();
    Eigen::Index i = 0;
    for (double p : probs) m(i, i) = p, ++i;
    return validate_density(m);
}

} // namespace

TEST_CASE("superoperator solve returns twice the derivative on pure states") {
    ComplexMatrix rho(2, 2);
    rho.setZero();
    rho(0, 0) = 1.0;
    // valid pure tangent: |w><psi| + |psi><w| with w orthogonal to psi
    ComplexMatrix d(2, 2);
    d.setZero();
    d(0, 1) = 0.3 - 0.4i;
    d(1, 0) = 0.3 + 0.4i;
    ComplexMatrix l =
        oracle::sld_vec_solve(validate_density(rho), HermitianMatrix(d));
    CHECK(frobenius_distance(l, 2.0 * d) <= 1e-10);
}

TEST_CASE("superoperator solve maps zero to zero") {
    DensityMatrix rho = diag_state({0.6, 0.4});
    ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
    CHECK(oracle::sld_vec_solve(rho, HermitianMatrix(zero)).norm() <= 1e-14);
}

TEST_CASE("superoperator solve agrees with the spectral solver on full rank") {
    ComplexMatrix rho(3, 3);
    rho.setZero();
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.2;
    ComplexMatrix d(3, 3);
    d << 0.10, 0.20 + 0.10i, -0.30i,
         0.20 - 0.10i, -0.05, 0.40,
         0.30i, 0.40, -0.05;
    DensityMatrix dm = validate_density(rho);
    HermitianMatrix hd{d};
    ComplexMatrix via_oracle = oracle::sld_vec_solve(dm, hd);
    ComplexMatrix via_spectral = solve_sld(spectral_decompose(dm), hd);
    CHECK(frobenius_distance(via_oracle, via_spectral) <= 1e-9);
}

TEST_CASE("superoperator solve rejects unreachable derivatives") {
    DensityMatrix rho = diag_state({1.0, 0.0});
    HermitianMatrix bad(0.5 * pauli_z());
    CHECK_THROWS_AS(oracle::sld_vec_solve(rho, bad),
                    InconsistentDerivativeError);
}

TEST_CASE("fidelity of a state with itself is one") {
    DensityMatrix rho = diag_state({0.6, 0.3, 0.1});
    CHECK(oracle::bures_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fidelity of pure states is the overlap magnitude") {
    const double a = 0.3;
    ComplexMatrix r1(2, 2), r2(2, 2);
    r1.setZero();
    r1(0, 0) = 1.0;
    Eigen::Vector2cd psi(std::cos(a), std::sin(a));
    r2 = psi * psi.adjoint();
    CHECK(oracle::bures_fidelity(validate_density(r1), validate_density(r2)) ==
          doctest::Approx(std::cos(a)));
}

TEST_CASE("fidelity of commuting states is the Bhattacharyya overlap") {
    DensityMatrix rho = diag_state({0.7, 0.3});
    DensityMatrix sigma = diag_state({0.4, 0.6});
    const double expect = std::sqrt(0.7 * 0.4) + std::sqrt(0.3 * 0.6);
    CHECK(oracle::bures_fidelity(rho, sigma) == doctest::Approx(expect));
    // symmetry of the arguments
    CHECK(oracle::bures_fidelity(sigma, rho) == doctest::Approx(expect));
}

TEST_CASE("fidelity checks dimensions") {
    DensityMatrix a = diag_state({0.5, 0.5});
    DensityMatrix b = diag_state({0.4, 0.3, 0.3});
    CHECK_THROWS_AS(oracle::bures_fidelity(a, b), ShapeError);
}

TEST_CASE("fidelity-drop information estimate matches the closed form") {
    ParametricModel m = models::mixed_bloch(0.5);
    const double est =
        oracle::qfi_fidelity(m, point2(M_PI / 2.0, 0.0), 0, 1e-4);
    CHECK(std::abs(est - 0.25) / 0.25 <= 1e-4);
}

TEST_CASE("fidelity-drop estimate vanishes on constant models") {
    ParametricModel m = models::constant(diag_state({0.7, 0.3}), 1);
    ParamPoint t(1);
    t << 0.0;
    CHECK(std::abs(oracle::qfi_fidelity(m, t, 0, 1e-4)) <= 1e-10);
}

TEST_CASE("fidelity-drop estimate survives almost-pure radii at a coarse step") {
    // at r = 1 − 1e−6 the fidelity drop over ε = 1e−4 sits below the noise
    // floor of  Tr√(√ρσ√ρ) in double precision, so the widest admissible
    // step is the honest choice here
    ParametricModel m = models::mixed_bloch(1.0 - 1e-6);
    const double r = 1.0 - 1e-6;
    const double est = oracle::qfi_fidelity(m, point2(M_PI / 2.0, 0.0), 0, 1e-2);
    CHECK(std::abs(est - r * r) / (r * r) <= 1e-4);
}

TEST_CASE("fidelity-drop oracle abstains on rank-deficient states") {
    CHECK_THROWS_AS(
        oracle::qfi_fidelity(models::pure_bloch(), point2(1.0, 0.2), 0, 1e-4),
        UnsupportedOracleError);
    CHECK_THROWS_AS(
        oracle::qfi_fidelity(models::embedded_qubit(3, 0.5), point2(1.0, 0.2), 0, 1e-4),
        UnsupportedOracleError);
}

TEST_CASE("plaquette loop reproduces the pure Berry curvature") {
    const double est = oracle::curvature_finite_loop_pure(
        models::pure_bloch(), point2(M_PI / 2.0, 0.0), {0, 1}, 1e-3);
    CHECK(std::abs(est + 0.5) <= 1e-5);
}

TEST_CASE("plaquette loop converges quadratically in the mesh size") {
    const ParamPoint theta = point2(1.1, 0.4);
    const double exact = -0.5 * std::sin(1.1);
    const double coarse = oracle::curvature_finite_loop_pure(
        models::pure_bloch(), theta, {0, 1}, 4e-3);
    const double fine = oracle::curvature_finite_loop_pure(
        models::pure_bloch(), theta, {0, 1}, 2e-3);
    const double ratio = std::abs(coarse - exact) / std::abs(fine - exact);
    CHECK(ratio >= 2.5);
    CHECK(ratio <= 6.0);
}

TEST_CASE("plaquette of a constant pure family is flat") {
    ComplexMatrix proj(2, 2);
    proj.setZero();
    proj(0, 0) = 1.0;
    ParametricModel m = models::constant(validate_density(proj), 2);
    CHECK(std::abs(oracle::curvature_finite_loop_pure(m, point2(0.0, 0.0),
                                                      {0, 1}, 1e-3)) <= 1e-12);
}

TEST_CASE("plaquette oracle refuses mixed states and bad mesh sizes") {
    CHECK_THROWS_AS(oracle::curvature_finite_loop_pure(
                        models::mixed_bloch(0.5), point2(1.0, 0.2), {0, 1}, 1e-3),
                    WrongBranchError);
    CHECK_THROWS_AS(oracle::curvature_finite_loop_pure(
                        models::pure_bloch(), point2(1.0, 0.2), {0, 1}, 1e-5),
                    RangeError);
    CHECK_THROWS_AS(oracle::curvature_finite_loop_pure(
                        models::pure_bloch(), point2(1.0, 0.2), {0, 0}, 1e-3),
                    RangeError);
}
