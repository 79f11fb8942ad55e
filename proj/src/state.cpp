#include "qgeom/state.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qgeom {

DensityMatrix validate_density(const ComplexMatrix& m, double tol) {
    std::vector<std::string> violations;
    std::ostringstream item;

    if (m.rows() != m.cols() || m.rows() == 0) {
        item << "not a nonempty square matrix (" << m.rows() << "x" << m.cols() << ")";
        throw ValidationError("invalid density matrix: " + item.str());
    }
    if (!m.allFinite()) {
        throw ValidationError("invalid density matrix: non-finite entries");
    }

    const double herm = hermiticity_defect(m);
    if (herm > tol * std::max(1.0, m.norm())) {
        item.str("");
        item << "hermiticity defect " << herm;
        violations.push_back(item.str());
    }

    const Complex tr = m.trace();
    const double trace_defect = std::abs(tr - Complex(1.0, 0.0));
    if (trace_defect > tol) {
        item.str("");
        item << "trace " << tr.real();
        if (std::abs(tr.imag()) > tol) item << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i";
        item << " (defect " << trace_defect << ")";
        violations.push_back(item.str());
    }

    // Positivity is checked on the symmetrized part so a tiny anti-Hermitian
    // component does not hide a genuinely negative eigenvalue (or vice versa).
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
    if (solver.info() != Eigen::Success) {
        throw NumericError("validate_density: eigensolver failed to converge");
    }
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol) {
        item.str("");
        item << "not positive semidefinite (eigenvalue " << min_eig << ")";
        violations.push_back(item.str());
    }

    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid density matrix: ";
        for (std::size_t k = 0; k < violations.size(); ++k) {
            if (k) msg << "; ";
            msg << violations[k];
        }
        throw ValidationError(msg.str());
    }
    return DensityMatrix(m);
}

ComplexMatrix Spectrum::reconstruct() const {
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (Eigen::Index k = 0; k < dim(); ++k) {
        out.noalias() +=
            probabilities[k] * (eigenstates.col(k) * eigenstates.col(k).adjoint());
    }
    return out;
}

Spectrum spectral_decompose(const DensityMatrix& rho, double rank_tol) {
    if (rank_tol <= 0.0) {
        throw RangeError("spectral_decompose: rank_tol must be positive");
    }
    EigenSystem eig = eig_hermitian(HermitianMatrix::symmetrized(rho.matrix()));

    Spectrum spec;
    spec.probabilities = eig.values;
    spec.eigenstates = std::move(eig.vectors);
    spec.rank_tol = rank_tol;

    for (Eigen::Index k = 0; k < spec.probabilities.size(); ++k) {
        double& p = spec.probabilities[k];
        if (p < 0.0) {
            if (p <= -kDensityTol) {
                std::ostringstream msg;
                msg << "spectral_decompose: eigenvalue " << p
                    << " below the clamping window";
                throw NumericError(msg.str());
            }
            p = 0.0;  // round-off negative
        }
        if (p > rank_tol) ++spec.rank;
    }

    const double sum_defect = std::abs(spec.probabilities.sum() - 1.0);
    if (sum_defect > kDensityTol) {
        std::ostringstream msg;
        msg << "spectral_decompose: probabilities sum defect " << sum_defect;
        throw NumericError(msg.str());
    }
    return spec;
}

Povm::Povm(std::vector<ComplexMatrix> elements, double tol)
    : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw ValidationError("Povm: no elements");
    }
    const Eigen::Index n = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t m = 0; m < elements_.size(); ++m) {
        const ComplexMatrix& e = elements_[m];
        if (e.rows() != n || e.cols() != n) {
            std::ostringstream msg;
            msg << "Povm: element " << m << " is " << e.rows() << "x" << e.cols()
                << ", expected " << n << "x" << n;
            throw ShapeError(msg.str());
        }
        if (!e.allFinite()) {
            std::ostringstream msg;
            msg << "Povm: element " << m << " has non-finite entries";
            throw ValidationError(msg.str());
        }
        const double herm = hermiticity_defect(e);
        if (herm > tol * std::max(1.0, e.norm())) {
            std::ostringstream msg;
            msg << "Povm: element " << m << " hermiticity defect " << herm;
            throw HermiticityError(msg.str());
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (e + e.adjoint()));
        if (solver.info() != Eigen::Success) {
            throw NumericError("Povm: eigensolver failed to converge");
        }
        const double min_eig = solver.eigenvalues().minCoeff();
        if (min_eig < -tol) {
            std::ostringstream msg;
            msg << "Povm: element " << m << " has negative eigenvalue " << min_eig;
            throw ValidationError(msg.str());
        }
        sum += e;
    }
    const double completeness =
        (sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (completeness > tol) {
        std::ostringstream msg;
        msg << "Povm: completeness defect " << completeness
            << " (elements do not sum to the identity)";
        throw ValidationError(msg.str());
    }
}

RealVector born_probabilities(const DensityMatrix& rho, const Povm& povm) {
    if (rho.dim() != povm.dim()) {
        std::ostringstream msg;
        msg << "born_probabilities: state dim " << rho.dim()
            << " vs measurement dim " << povm.dim();
        throw ShapeError(msg.str());
    }
    RealVector q(static_cast<Eigen::Index>(povm.size()));
    for (std::size_t m = 0; m < povm.size(); ++m) {
        const Complex t = (rho.matrix() * povm.elements()[m]).trace();
        double qm = t.real();
        if (qm < 0.0) {
            if (qm < -1e-12) {
                std::ostringstream msg;
                msg << "born_probabilities: outcome " << m << " probability " << qm;
                throw NumericError(msg.str());
            }
            qm = 0.0;
        }
        q[static_cast<Eigen::Index>(m)] = qm;
    }
    if (std::abs(q.sum() - 1.0) > kDensityTol) {
        std::ostringstream msg;
        msg << "born_probabilities: probabilities sum to " << q.sum();
        throw NumericError(msg.str());
    }
    return q;
}

} // namespace qgeom
