#include "qgeom/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace qgeom {

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).norm();
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << "frobenius_distance: shape mismatch (" << a.rows() << "x" << a.cols()
            << " vs " << b.rows() << "x" << b.cols() << ")";
        throw ShapeError(msg.str());
    }
    return (a - b).norm();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, double tol) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) {
        std::ostringstream msg;
        msg << "HermitianMatrix: matrix is " << mat_.rows() << "x" << mat_.cols()
            << ", must be square";
        throw ShapeError(msg.str());
    }
    if (!mat_.allFinite()) {
        throw ValidationError("HermitianMatrix: non-finite entries");
    }
    const double defect = hermiticity_defect(mat_);
    const double scale = std::max(1.0, mat_.norm());
    if (defect > tol * scale) {
        std::ostringstream msg;
        msg << "HermitianMatrix: hermiticity defect " << defect << " exceeds "
            << tol * scale;
        throw HermiticityError(msg.str());
    }
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m, Projected) : mat_(std::move(m)) {}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("HermitianMatrix::symmetrized: matrix must be square");
    }
    if (!m.allFinite()) {
        throw ValidationError("HermitianMatrix::symmetrized: non-finite entries");
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    return HermitianMatrix(std::move(h), Projected{});
}

namespace {

// Secondary sort key for (near-)degenerate eigenvalues: compare the
// eigenvector columns entrywise after rounding, real then imaginary part.
// Makes the output ordering a function of the input values alone.
bool column_less(const ComplexMatrix& v, Eigen::Index a, Eigen::Index b) {
    constexpr double kQuantum = 1e-12;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const double ra = std::round(v(r, a).real() / kQuantum);
        const double rb = std::round(v(r, b).real() / kQuantum);
        if (ra != rb) return ra < rb;
        const double ia = std::round(v(r, a).imag() / kQuantum);
        const double ib = std::round(v(r, b).imag() / kQuantum);
        if (ia != ib) return ia < ib;
    }
    return false;
}

} // namespace

EigenSystem eig_hermitian(const HermitianMatrix& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eig_hermitian: eigensolver failed to converge on a "
            << h.dim() << "x" << h.dim() << " matrix";
        throw NumericError(msg.str());
    }

    const Eigen::Index n = h.dim();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});

    const RealVector& w = solver.eigenvalues();
    const ComplexMatrix& v = solver.eigenvectors();
    const double tie_tol = 1e-12 * std::max(1.0, h.matrix().norm());
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) {
                         if (std::abs(w[a] - w[b]) > tie_tol) return w[a] > w[b];
                         return column_less(v, a, b);
                     });

    EigenSystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values[k] = w[order[static_cast<std::size_t>(k)]];
        out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

namespace {

ComplexMatrix make_pauli(int which) {
    ComplexMatrix m(2, 2);
    const Complex i(0.0, 1.0);
    switch (which) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, -i, i, 0; break;
        case 2: m << 1, 0, 0, -1; break;
        default: m.setIdentity(); break;
    }
    return m;
}

} // namespace

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m = make_pauli(0);
    return m;
}

const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m = make_pauli(1);
    return m;
}

const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m = make_pauli(2);
    return m;
}

const ComplexMatrix& identity2() {
    static const ComplexMatrix m = make_pauli(3);
    return m;
}

} // namespace qgeom
