#include "qgeom/oracle.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/SVD>

#include "qgeom/errors.hpp"
#include "qgeom/matrix.hpp"

namespace qgeom {
namespace oracle {

namespace {

// Deliberately local Kronecker product: the reference routes assemble their
// own operators instead of reusing the library's machinery.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericError("bures_fidelity: eigendecomposition failed");
    }
    RealVector vals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * vals.asDiagonal() *
           solver.eigenvectors().adjoint();
}

} // namespace

ComplexMatrix sld_vec_solve(const DensityMatrix& rho,
                            const HermitianMatrix& drho,
                            double sv_cutoff) {
    const Eigen::Index n = rho.dim();
    if (drho.dim() != n) {
        std::ostringstream msg;
        msg << "sld_vec_solve: state dimension " << n
            << " does not match derivative dimension " << drho.dim();
        throw ShapeError(msg.str());
    }
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
    // vec is column-major, so ρL ↦ (I⊗ρ)vec(L) and Lρ ↦ (ρᵀ⊗I)vec(L).
    const ComplexMatrix a =
        0.5 * (kron(eye, r) + kron(r.transpose(), eye));
    const Eigen::VectorXcd b =
        Eigen::Map<const Eigen::VectorXcd>(drho.matrix().data(), n * n);

    Eigen::JacobiSVD<ComplexMatrix> svd(
        a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    Eigen::VectorXcd coeff = svd.matrixU().adjoint() * b;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        coeff[i] = sv[i] > sv_cutoff ? coeff[i] / sv[i] : Complex(0.0, 0.0);
    }
    const Eigen::VectorXcd x = svd.matrixV() * coeff;

    const double residual =
        (a * x - b).norm() / std::max(1.0, b.norm());
    if (residual > 1e-8) {
        std::ostringstream msg;
        msg << "sld_vec_solve: superoperator residual " << residual
            << " exceeds 1e-08; the derivative leaves the reachable set";
        throw InconsistentDerivativeError(msg.str());
    }

    const ComplexMatrix l = Eigen::Map<const ComplexMatrix>(x.data(), n, n);
    return HermitianMatrix::symmetrized(l).matrix();
}

double bures_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        std::ostringstream msg;
        msg << "bures_fidelity: dimensions " << rho.dim() << " and "
            << sigma.dim() << " do not match";
        throw ShapeError(msg.str());
    }
    const ComplexMatrix s = psd_sqrt(rho.matrix());
    ComplexMatrix inner = s * sigma.matrix() * s;
    inner = 0.5 * (inner + inner.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(inner);
    if (solver.info() != Eigen::Success) {
        throw NumericError("bures_fidelity: eigendecomposition failed");
    }
    return solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double qfi_fidelity(const ParametricModel& model,
                    const ParamPoint& theta,
                    int axis,
                    double eps) {
    if (axis < 0 || axis >= model.param_count()) {
        std::ostringstream msg;
        msg << "qfi_fidelity: axis " << axis << " out of range [0, "
            << model.param_count() << ")";
        throw RangeError(msg.str());
    }
    if (!(eps >= 1e-9 && eps <= 1e-2)) {
        std::ostringstream msg;
        msg << "qfi_fidelity: step " << eps << " outside [1e-09, 0.01]";
        throw RangeError(msg.str());
    }
    const DensityMatrix rho0 = model.evaluate(theta);
    const Spectrum spec = spectral_decompose(rho0);
    if (!spec.full_rank()) {
        std::ostringstream msg;
        msg << "qfi_fidelity: state has rank " << spec.rank << " < dimension "
            << spec.dim() << "; the fidelity expansion needs a full-rank state";
        throw UnsupportedOracleError(msg.str());
    }

    const auto estimate = [&](double e) {
        ParamPoint shifted = theta;
        shifted[axis] += e;
        const double f = bures_fidelity(rho0, model.evaluate(shifted));
        return 8.0 * (1.0 - f) / (e * e);
    };
    // One-sided steps leave a leading O(ε) error, removed by the two-step
    // extrapolation 2·G(ε/2) − G(ε).
    return 2.0 * estimate(0.5 * eps) - estimate(eps);
}

double curvature_finite_loop_pure(const ParametricModel& model,
                                  const ParamPoint& theta,
                                  std::pair<int, int> axes,
                                  double eps) {
    const auto [a, b] = axes;
    if (a == b || a < 0 || b < 0 || a >= model.param_count() ||
        b >= model.param_count()) {
        std::ostringstream msg;
        msg << "curvature_finite_loop_pure: invalid axis pair (" << a << ", "
            << b << ")";
        throw RangeError(msg.str());
    }
    if (!(eps >= 1e-4 && eps <= 1e-2)) {
        std::ostringstream msg;
        msg << "curvature_finite_loop_pure: plaquette size " << eps
            << " outside [0.0001, 0.01]";
        throw RangeError(msg.str());
    }

    const auto top_state = [&](double da, double db) {
        ParamPoint p = theta;
        p[a] += da;
        p[b] += db;
        const Spectrum spec = spectral_decompose(model.evaluate(p));
        if (spec.rank != 1) {
            std::ostringstream msg;
            msg << "curvature_finite_loop_pure: state has rank " << spec.rank
                << "; the overlap loop is defined for rank-1 families only";
            throw WrongBranchError(msg.str());
        }
        return Eigen::VectorXcd(spec.eigenstates.col(0));
    };

    // Corners are centred on the evaluation point so the cell average and the
    // point value differ at second order, not first (the curvature-gradient
    // term integrates to zero over a symmetric cell).
    const double h = 0.5 * eps;
    const Eigen::VectorXcd psi00 = top_state(-h, -h);
    const Eigen::VectorXcd psi10 = top_state(h, -h);
    const Eigen::VectorXcd psi11 = top_state(h, h);
    const Eigen::VectorXcd psi01 = top_state(-h, h);

    const Complex overlaps[4] = {
        psi00.dot(psi10), psi10.dot(psi11), psi11.dot(psi01),
        psi01.dot(psi00)};
    Complex loop(1.0, 0.0);
    for (const Complex& o : overlaps) {
        if (std::abs(o) < 0.1) {
            std::ostringstream msg;
            msg << "curvature_finite_loop_pure: neighbouring states nearly "
                   "orthogonal (|overlap| = "
                << std::abs(o) << "); shrink the plaquette";
            throw NumericError(msg.str());
        }
        loop *= o;
    }
    return -std::arg(loop) / (eps * eps);
}

} // namespace oracle
} // namespace qgeom
