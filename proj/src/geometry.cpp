#include "qgeom/geometry.hpp"

#include <cmath>
#include <sstream>

namespace qgeom {

Complex qgt(const DensityMatrix& rho,
            const ComplexMatrix& l_a,
            const ComplexMatrix& l_b) {
    const Eigen::Index n = rho.dim();
    if (l_a.rows() != n || l_a.cols() != n || l_b.rows() != n || l_b.cols() != n) {
        throw ShapeError("qgt: operator dims do not match the state");
    }
    return 0.25 * (rho.matrix() * l_a * l_b).trace();
}

RealMatrix qfi_matrix(const DensityMatrix& rho, const SldSet& slds) {
    const int d = static_cast<int>(slds.operators.size());
    if (d == 0) {
        throw ValidationError("qfi_matrix: empty SLD set");
    }
    RealMatrix f(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = a; b < d; ++b) {
            const double value =
                (rho.matrix() * slds.operators[a] * slds.operators[b]).trace().real();
            f(a, b) = value;
            f(b, a) = value;  // Re Tr(ρL_aL_b) is symmetric; mirror exactly
        }
    }
    return f;
}

double curvature_commutator(const DensityMatrix& rho,
                            const ComplexMatrix& l_a,
                            const ComplexMatrix& l_b) {
    const Eigen::Index n = rho.dim();
    if (l_a.rows() != n || l_a.cols() != n || l_b.rows() != n || l_b.cols() != n) {
        throw ShapeError("curvature_commutator: operator dims do not match the state");
    }
    const Complex t_ab = (rho.matrix() * l_a * l_b).trace();
    const Complex t_ba = (rho.matrix() * l_b * l_a).trace();
    // (i/4)Tr(ρ[L_a, L_b]) assembled so swapping the arguments flips the
    // sign exactly. The real parts must cancel; their residue is the error.
    const double residue = 0.25 * std::abs(t_ab.real() - t_ba.real());
    if (residue > 1e-10) {
        std::ostringstream msg;
        msg << "curvature_commutator: real residue " << residue
            << " in the commutator trace";
        throw NumericError(msg.str());
    }
    return -0.25 * (t_ab.imag() - t_ba.imag());
}

WilczekZeeTable::WilczekZeeTable(const Spectrum& spec,
                                 const HermitianMatrix& drho_a,
                                 const HermitianMatrix& drho_b,
                                 double degeneracy_tol)
    : p_(spec.probabilities), tol_(degeneracy_tol) {
    const Eigen::Index n = spec.dim();
    if (drho_a.dim() != n || drho_b.dim() != n) {
        throw ShapeError("wilczek_zee: derivative dims do not match the spectrum");
    }
    if (tol_ <= 0.0) {
        throw RangeError("wilczek_zee: degeneracy tolerance must be positive");
    }
    const ComplexMatrix& v = spec.eigenstates;
    ma_ = v.adjoint() * drho_a.matrix() * v;
    ma_ = 0.5 * (ma_ + ma_.adjoint());
    mb_ = v.adjoint() * drho_b.matrix() * v;
    mb_ = 0.5 * (mb_ + mb_.adjoint());
}

void WilczekZeeTable::check_index(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || j < 0 || i >= dim() || j >= dim()) {
        std::ostringstream msg;
        msg << "wilczek_zee: index pair (" << i << ", " << j << ") out of range";
        throw RangeError(msg.str());
    }
}

bool WilczekZeeTable::defined(Eigen::Index i, Eigen::Index j) const {
    check_index(i, j);
    return i != j && std::abs(p_[i] - p_[j]) > tol_;
}

Complex WilczekZeeTable::at(Eigen::Index i, Eigen::Index j) const {
    if (!defined(i, j)) {
        std::ostringstream msg;
        msg << "wilczek_zee: pair (" << i << ", " << j << ") is degenerate (p_i = "
            << p_[i] << ", p_j = " << p_[j] << ", tol " << tol_ << ")";
        throw DegeneracyError(msg.str());
    }
    const double gap = p_[j] - p_[i];
    // A_ij = ⟨ψi|∂_aψj⟩⟨ψi|∂_bψj⟩*, with the overlaps recovered from the
    // derivative matrix elements: ⟨ψi|∂ψj⟩ = ⟨ψi|∂ρ|ψj⟩/(p_j − p_i).
    return ma_(i, j) * std::conj(mb_(i, j)) / (gap * gap);
}

WilczekZeeTable wilczek_zee(const Spectrum& spec,
                            const HermitianMatrix& drho_a,
                            const HermitianMatrix& drho_b,
                            double degeneracy_tol) {
    return WilczekZeeTable(spec, drho_a, drho_b, degeneracy_tol);
}

double curvature_spectral_fullrank(const Spectrum& spec, const WilczekZeeTable& wz) {
    const Eigen::Index n = spec.dim();
    if (wz.dim() != n) {
        throw ShapeError("curvature_spectral_fullrank: table does not match the spectrum");
    }
    if (!spec.full_rank()) {
        std::ostringstream msg;
        msg << "curvature_spectral_fullrank: state has rank " << spec.rank << " < "
            << n << "; use the low-rank route";
        throw WrongBranchError(msg.str());
    }
    double omega = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            // Skipped near-degenerate pairs cost O(tol³) here: the weight
            // below is cubic in the gap.
            if (!wz.defined(i, j)) continue;
            const double diff = spec.probabilities[i] - spec.probabilities[j];
            const double sum = spec.probabilities[i] + spec.probabilities[j];
            omega += -2.0 * (diff * diff * diff) / (sum * sum) * wz.at(i, j).imag();
        }
    }
    return omega;
}

namespace {

// Contribution of pair (i, k) to Ω(ψi) and to the exchange term, shared
// removability policy: an undefined (near-degenerate) pair is admissible
// only when the derivative has no weight across it, in which case the exact
// contribution vanishes with the numerator.
bool removable_pair(const WilczekZeeTable& wz, Eigen::Index i, Eigen::Index k) {
    return std::abs(wz.numerator_a(i, k)) <= kDegeneracyTol &&
           std::abs(wz.numerator_b(i, k)) <= kDegeneracyTol;
}

} // namespace

std::vector<double> eigenstate_curvatures(const Spectrum& spec,
                                          const WilczekZeeTable& wz) {
    const Eigen::Index n = spec.dim();
    if (wz.dim() != n) {
        throw ShapeError("eigenstate_curvatures: table does not match the spectrum");
    }
    std::vector<double> omegas;
    omegas.reserve(static_cast<std::size_t>(spec.rank));
    for (Eigen::Index i = 0; i < spec.rank; ++i) {
        double w = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == i) continue;
            if (!wz.defined(i, k)) {
                if (removable_pair(wz, i, k)) continue;
                std::ostringstream msg;
                msg << "eigenstate_curvatures: populated state " << i
                    << " is degenerate with state " << k
                    << " and the derivative couples them";
                throw DegeneracyError(msg.str());
            }
            w += -2.0 * wz.at(i, k).imag();
        }
        omegas.push_back(w);
    }
    return omegas;
}

double curvature_spectral_lowrank(const Spectrum& spec, const WilczekZeeTable& wz) {
    const Eigen::Index n = spec.dim();
    if (wz.dim() != n) {
        throw ShapeError("curvature_spectral_lowrank: table does not match the spectrum");
    }
    if (spec.full_rank()) {
        std::ostringstream msg;
        msg << "curvature_spectral_lowrank: state is full rank (" << spec.rank
            << "); use the full-rank route";
        throw WrongBranchError(msg.str());
    }

    const std::vector<double> omegas = eigenstate_curvatures(spec, wz);
    double omega = curvature_average(spec, omegas);

    for (Eigen::Index i = 0; i < spec.rank; ++i) {
        for (Eigen::Index j = 0; j < spec.rank; ++j) {
            if (i == j) continue;
            if (!wz.defined(i, j)) {
                if (removable_pair(wz, i, j)) continue;
                std::ostringstream msg;
                msg << "curvature_spectral_lowrank: populated pair (" << i << ", "
                    << j << ") is degenerate and the derivative couples it";
                throw DegeneracyError(msg.str());
            }
            const double pi = spec.probabilities[i];
            const double pj = spec.probabilities[j];
            const double sum = pi + pj;
            omega += 4.0 * pi * pj * (pi - pj) / (sum * sum) * wz.at(i, j).imag();
        }
    }
    return omega;
}

double curvature_average(const Spectrum& spec,
                         const std::vector<double>& pure_curvatures) {
    if (pure_curvatures.size() != static_cast<std::size_t>(spec.rank)) {
        std::ostringstream msg;
        msg << "curvature_average: " << pure_curvatures.size()
            << " curvatures for rank " << spec.rank;
        throw ShapeError(msg.str());
    }
    double out = 0.0;
    for (Eigen::Index i = 0; i < spec.rank; ++i) {
        out += spec.probabilities[i] * pure_curvatures[static_cast<std::size_t>(i)];
    }
    return out;
}

GeometryReport geometry_report(const ParametricModel& model,
                               const ParamPoint& theta,
                               const DiffScheme& scheme) {
    GeometryReport report;
    report.theta = theta;

    const DensityMatrix rho = model.evaluate(theta);
    const int d = model.param_count();

    SldSet slds = solve_sld_set(model, theta, scheme);
    const Spectrum& spec = slds.spectrum;
    report.branch = spec.full_rank() ? "full" : "low";

    std::vector<HermitianMatrix> derivs;
    derivs.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        derivs.push_back(derivative(model, theta, a, scheme));
    }

    report.qfi = qfi_matrix(rho, slds);
    report.qgt.resize(d, d);
    report.curvature = RealMatrix::Zero(d, d);

    double max_sld_residual = 0.0;
    for (double r : slds.residuals) max_sld_residual = std::max(max_sld_residual, r);
    double max_trace = 0.0;
    for (const ComplexMatrix& l : slds.operators) {
        max_trace = std::max(max_trace, std::abs((rho.matrix() * l).trace()));
    }

    double max_asym = 0.0;          // |Ω_ab + Ω_ba| before the mirror step
    double max_qgt_relation = 0.0;  // |Ω_ab + 2 Im Q_ab|
    double max_cross_route = 0.0;   // |commutator − spectral| over defined pairs
    double skipped_pairs = 0.0;
    double spectral_unavailable = 0.0;

    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            report.qgt(a, b) = qgt(rho, slds.operators[a], slds.operators[b]);
        }
    }

    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            const double w_ab =
                curvature_commutator(rho, slds.operators[a], slds.operators[b]);
            const double w_ba =
                curvature_commutator(rho, slds.operators[b], slds.operators[a]);
            max_asym = std::max(max_asym, std::abs(w_ab + w_ba));
            report.curvature(a, b) = w_ab;
            report.curvature(b, a) = -w_ab;

            max_qgt_relation = std::max(
                max_qgt_relation, std::abs(w_ab + 2.0 * report.qgt(a, b).imag()));

            const WilczekZeeTable wz =
                wilczek_zee(spec, derivs[static_cast<std::size_t>(a)],
                            derivs[static_cast<std::size_t>(b)]);
            for (Eigen::Index i = 0; i < spec.dim(); ++i) {
                for (Eigen::Index j = i + 1; j < spec.dim(); ++j) {
                    if (!wz.defined(i, j)) skipped_pairs += 1.0;
                }
            }
            // The commutator value is authoritative; the spectral branch is a
            // cross-check and may refuse genuinely coupled degenerate pairs.
            try {
                const double w_spectral = spec.full_rank()
                                              ? curvature_spectral_fullrank(spec, wz)
                                              : curvature_spectral_lowrank(spec, wz);
                max_cross_route =
                    std::max(max_cross_route, std::abs(w_ab - w_spectral));
            } catch (const DegeneracyError&) {
                spectral_unavailable = 1.0;
            }
        }
    }

    report.residuals["sld_residual_max"] = max_sld_residual;
    report.residuals["sld_trace_max"] = max_trace;
    report.residuals["curvature_asymmetry_max"] = max_asym;
    report.residuals["qgt_curvature_relation_max"] = max_qgt_relation;
    report.residuals["spectral_vs_commutator_max"] = max_cross_route;
    report.residuals["degenerate_pairs_skipped"] = skipped_pairs;
    report.residuals["spectral_route_unavailable"] = spectral_unavailable;
    return report;
}

} // namespace qgeom
