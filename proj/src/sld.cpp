#include "qgeom/sld.hpp"

#include <cmath>
#include <sstream>

namespace qgeom {

SldSolution solve_sld_detailed(const Spectrum& spec,
                               const HermitianMatrix& drho,
                               double support_tol,
                               double consistency_tol) {
    const Eigen::Index n = spec.dim();
    if (drho.dim() != n) {
        std::ostringstream msg;
        msg << "solve_sld: derivative dim " << drho.dim() << " vs state dim " << n;
        throw ShapeError(msg.str());
    }

    const ComplexMatrix& v = spec.eigenstates;
    // Derivative in the eigenbasis; re-symmetrized so the i↔j symmetry of
    // everything built from it is exact rather than up to product round-off.
    ComplexMatrix d = v.adjoint() * drho.matrix() * v;
    d = 0.5 * (d + d.adjoint());

    ComplexMatrix l = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double denom = spec.probabilities[j] + spec.probabilities[k];
            if (denom > support_tol) {
                l(j, k) = 2.0 * d(j, k) / denom;
            } else if (std::abs(d(j, k)) > consistency_tol) {
                // Weight strictly outside the support: no Hermitian L can
                // produce it, so the derivative does not belong to ρ.
                std::ostringstream msg;
                msg << "solve_sld: derivative element (" << j << ", " << k
                    << ") = " << std::abs(d(j, k))
                    << " lies outside the state's support";
                throw InconsistentDerivativeError(msg.str());
            }
            // else: minimal-norm gauge, kernel block stays zero
        }
    }

    SldSolution out;
    out.op = v * l * v.adjoint();
    out.op = 0.5 * (out.op + out.op.adjoint());

    const ComplexMatrix rho = spec.reconstruct();
    out.residual =
        (drho.matrix() - 0.5 * (out.op * rho + rho * out.op)).norm();
    return out;
}

ComplexMatrix solve_sld(const Spectrum& spec,
                        const HermitianMatrix& drho,
                        double support_tol,
                        double consistency_tol) {
    return solve_sld_detailed(spec, drho, support_tol, consistency_tol).op;
}

ComplexMatrix sld_pure_shortcut(const HermitianMatrix& drho) {
    return 2.0 * drho.matrix();
}

SldSet solve_sld_set(const ParametricModel& model,
                     const ParamPoint& theta,
                     const DiffScheme& scheme) {
    SldSet set;
    const DensityMatrix rho = model.evaluate(theta);
    set.spectrum = spectral_decompose(rho);
    for (int axis = 0; axis < model.param_count(); ++axis) {
        SldSolution sol =
            solve_sld_detailed(set.spectrum, derivative(model, theta, axis, scheme));
        if (sol.residual > kSldResidualTol) {
            std::ostringstream msg;
            msg << model.name() << ": SLD residual " << sol.residual << " on axis "
                << axis << " exceeds " << kSldResidualTol;
            throw NumericError(msg.str());
        }
        set.operators.push_back(std::move(sol.op));
        set.residuals.push_back(sol.residual);
    }
    return set;
}

LLExpectation sld_expectations(const DensityMatrix& rho,
                               const ComplexMatrix& l_a,
                               const ComplexMatrix& l_b) {
    const Eigen::Index n = rho.dim();
    if (l_a.rows() != n || l_a.cols() != n || l_b.rows() != n || l_b.cols() != n) {
        throw ShapeError("sld_expectations: operator dims do not match the state");
    }
    const Complex t_ab = (rho.matrix() * l_a * l_b).trace();
    const Complex t_ba = (rho.matrix() * l_b * l_a).trace();

    LLExpectation out;
    out.re = t_ab.real();
    out.im = t_ab.imag();

    // Same quantity through the commutator: Im⟨L_a L_b⟩ = −(i/2)⟨[L_a, L_b]⟩.
    const double im_comm = 0.5 * (t_ab.imag() - t_ba.imag());
    if (std::abs(out.im - im_comm) > 1e-10) {
        std::ostringstream msg;
        msg << "sld_expectations: product and commutator forms disagree by "
            << std::abs(out.im - im_comm);
        throw NumericError(msg.str());
    }
    return out;
}

} // namespace qgeom
