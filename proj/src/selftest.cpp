#include "qgeom/selftest.hpp"

#include <cmath>
#include <functional>
#include <utility>

#include "qgeom/geometry.hpp"
#include "qgeom/metrology.hpp"
#include "qgeom/model.hpp"
#include "qgeom/oracle.hpp"
#include "qgeom/qubit.hpp"
#include "qgeom/sampling.hpp"
#include "qgeom/sld.hpp"

namespace qgeom {

namespace {

struct PropertySpec {
    std::string name;
    double tolerance;
    std::function<double(std::uint64_t, Rng&)> worst_residual;
};

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

DiffScheme audit_scheme() {
    DiffScheme scheme;
    scheme.method = DiffMethod::richardson;
    scheme.step = 1e-4;
    return scheme;
}

BlochVector chart_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi),
            std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

BlochVector chart_theta_tangent(double theta, double phi) {
    return {std::cos(theta) * std::cos(phi),
            std::cos(theta) * std::sin(phi),
            -std::sin(theta)};
}

Eigen::VectorXcd gaussian_vector(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v[i] = Complex(re, im);
    }
    return v;
}

struct PureDraw {
    DensityMatrix rho;
    HermitianMatrix drho;
};

// Rank-1 state with a consistent tangent ∂ρ = |w⟩⟨ψ| + |ψ⟩⟨w|, w ⊥ ψ.
PureDraw random_pure_tangent(Eigen::Index dim, Rng& rng) {
    const ComplexMatrix u = random_unitary(dim, rng);
    const Eigen::VectorXcd psi = u.col(0);
    Eigen::VectorXcd w = gaussian_vector(dim, rng);
    w -= psi * psi.dot(w);
    const ComplexMatrix proj = psi * psi.adjoint();
    const ComplexMatrix d = w * psi.adjoint() + psi * w.adjoint();
    return PureDraw{validate_density(0.5 * (proj + proj.adjoint().eval())),
                    HermitianMatrix::symmetrized(d)};
}

struct MixedDraw {
    DensityMatrix rho;
    Spectrum spec;
    HermitianMatrix da, db;
    ComplexMatrix la, lb;
};

MixedDraw random_state_pair(Eigen::Index dim, Rng& rng) {
    MixedDraw out{random_density(dim, rng),
                  Spectrum{},
                  HermitianMatrix(random_hermitian(dim, rng, true)),
                  HermitianMatrix(random_hermitian(dim, rng, true)),
                  {},
                  {}};
    out.spec = spectral_decompose(out.rho);
    out.la = solve_sld(out.spec, out.da);
    out.lb = solve_sld(out.spec, out.db);
    return out;
}

struct AuditDraw {
    FamilyDraw family;
    Povm povm;
};

AuditDraw random_audit_draw(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 3);
    FamilyDraw family = random_unitary_family(dim, rng);
    Povm povm = random_projective_povm(dim, rng);
    return AuditDraw{std::move(family), std::move(povm)};
}

Povm z_projectors() {
    ComplexMatrix up = ComplexMatrix::Zero(2, 2);
    ComplexMatrix down = ComplexMatrix::Zero(2, 2);
    up(0, 0) = 1.0;
    down(1, 1) = 1.0;
    return Povm({up, down});
}

double sld_residual_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 7);
    const DensityMatrix rho = random_density(dim, rng);
    const HermitianMatrix drho(random_hermitian(dim, rng, true));
    return solve_sld_detailed(spectral_decompose(rho), drho).residual;
}

double sld_oracle_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 7);
    const DensityMatrix rho = random_density(dim, rng);
    const HermitianMatrix drho(random_hermitian(dim, rng, true));
    const ComplexMatrix main = solve_sld(spectral_decompose(rho), drho);
    const ComplexMatrix ref = oracle::sld_vec_solve(rho, drho);
    return (main - ref).norm();
}

double pure_shortcut_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const PureDraw d = random_pure_tangent(dim, rng);
    const ComplexMatrix main = solve_sld(spectral_decompose(d.rho), d.drho);
    return (main - sld_pure_shortcut(d.drho)).norm();
}

double sld_trace_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 7);
    const DensityMatrix rho = random_density(dim, rng);
    const HermitianMatrix drho(random_hermitian(dim, rng, true));
    const ComplexMatrix l = solve_sld(spectral_decompose(rho), drho);
    return std::abs((rho.matrix() * l).trace());
}

double fullrank_route_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const FamilyDraw fam = random_unitary_family(dim, rng);
    const DensityMatrix rho = fam.model.evaluate(fam.theta);
    const SldSet slds = solve_sld_set(fam.model, fam.theta);
    const double comm =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);
    const WilczekZeeTable wz =
        wilczek_zee(slds.spectrum, derivative(fam.model, fam.theta, 0),
                    derivative(fam.model, fam.theta, 1));
    return std::abs(comm - curvature_spectral_fullrank(slds.spectrum, wz));
}

double lowrank_route_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(draw % 3);
    const double r = uniform(rng, 0.2, 0.9);
    const ParametricModel model = models::embedded_qubit(n, r);
    ParamPoint theta(2);
    theta << uniform(rng, 0.3, std::acos(-1.0) - 0.3),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta);
    const double comm =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);
    const WilczekZeeTable wz =
        wilczek_zee(slds.spectrum, derivative(model, theta, 0),
                    derivative(model, theta, 1));
    const double spectral = curvature_spectral_lowrank(slds.spectrum, wz);
    const double closed = -r * r * r * std::sin(theta[0]) / 2.0;
    return std::max(std::abs(spectral - comm), std::abs(comm - closed));
}

double rank1_reduction_property(std::uint64_t, Rng& rng) {
    const ParametricModel model = models::pure_bloch();
    ParamPoint theta(2);
    theta << uniform(rng, 0.1, std::acos(-1.0) - 0.1),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const SldSet slds = solve_sld_set(model, theta);
    const WilczekZeeTable wz =
        wilczek_zee(slds.spectrum, derivative(model, theta, 0),
                    derivative(model, theta, 1));
    const double spectral = curvature_spectral_lowrank(slds.spectrum, wz);
    return std::abs(spectral - (-0.5 * std::sin(theta[0])));
}

double qubit_pure_property(std::uint64_t, Rng& rng) {
    const ParametricModel model = models::pure_bloch();
    ParamPoint theta(2);
    theta << uniform(rng, 0.0, std::acos(-1.0)),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta);
    const double comm =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);
    return std::abs(comm - (-0.5 * std::sin(theta[0])));
}

double qubit_mixed_property(std::uint64_t draw, Rng& rng) {
    const double radii[3] = {0.2, 0.5, 0.9};
    const double r = radii[draw % 3];
    const ParametricModel model = models::mixed_bloch(r);
    ParamPoint theta(2);
    theta << uniform(rng, 0.1, std::acos(-1.0) - 0.1),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta);
    const double comm =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);

    // Scaling law: the state's curvature is −r³ times the Berry curvature
    // of its smaller-probability eigenstate.
    const WilczekZeeTable wz =
        wilczek_zee(slds.spectrum, derivative(model, theta, 0),
                    derivative(model, theta, 1));
    const std::vector<double> pure = eigenstate_curvatures(slds.spectrum, wz);
    const double scaling = std::abs(comm - (-r * r * r * pure[1]));

    // Closed-form Bloch SLD against the generic solver, polar axis.
    const BlochVector rv = r * chart_point(theta[0], theta[1]);
    const BlochVector drv = r * chart_theta_tangent(theta[0], theta[1]);
    const BlochSld closed = qubit_sld_bloch(rv, drv);
    const double sld_gap = (closed.to_matrix() - slds.operators[0]).norm();
    return std::max(scaling, sld_gap);
}

double qgt_relation_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const MixedDraw d = random_state_pair(dim, rng);
    const Complex q = qgt(d.rho, d.la, d.lb);
    const double comm = curvature_commutator(d.rho, d.la, d.lb);
    return std::abs(comm + 2.0 * q.imag());
}

double antisymmetry_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const MixedDraw d = random_state_pair(dim, rng);
    const double ab = curvature_commutator(d.rho, d.la, d.lb);
    const double ba = curvature_commutator(d.rho, d.lb, d.la);
    return std::abs(ab + ba);
}

double wz_antisymmetry_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const MixedDraw d = random_state_pair(dim, rng);
    const WilczekZeeTable wz = wilczek_zee(d.spec, d.da, d.db);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < wz.dim(); ++i) {
        for (Eigen::Index j = 0; j < wz.dim(); ++j) {
            if (i == j || !wz.defined(i, j)) continue;
            worst = std::max(worst,
                             std::abs(wz.imag_at(i, j) + wz.imag_at(j, i)));
        }
    }
    return worst;
}

double gauge_invariance_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 5);
    const MixedDraw d = random_state_pair(dim, rng);
    const WilczekZeeTable wz = wilczek_zee(d.spec, d.da, d.db);

    Spectrum twisted = d.spec;
    for (Eigen::Index j = 0; j < twisted.eigenstates.cols(); ++j) {
        const double phase = uniform(rng, 0.0, 2.0 * std::acos(-1.0));
        twisted.eigenstates.col(j) *= std::exp(Complex(0.0, phase));
    }
    const WilczekZeeTable wz2 = wilczek_zee(twisted, d.da, d.db);

    double worst = 0.0;
    for (Eigen::Index i = 0; i < wz.dim(); ++i) {
        for (Eigen::Index j = 0; j < wz.dim(); ++j) {
            if (i == j || !wz.defined(i, j)) continue;
            worst = std::max(worst, std::abs(wz.at(i, j) - wz2.at(i, j)));
        }
    }
    return worst;
}

double pure_saturation_property(std::uint64_t, Rng& rng) {
    const ParametricModel model = models::pure_bloch();
    ParamPoint theta(2);
    theta << uniform(rng, 0.0, std::acos(-1.0)),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta);
    const RealMatrix f = qfi_matrix(rho, slds);
    const double w =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);
    return std::abs(f(0, 0) * f(1, 1) - 4.0 * w * w);
}

double product_bound_property(std::uint64_t draw, Rng& rng) {
    double fa = 0.0, fb = 0.0, im = 0.0;
    if (draw % 3 == 2) {
        const ParametricModel model = models::mixed_bloch(uniform(rng, 0.1, 0.9));
        ParamPoint theta(2);
        theta << uniform(rng, 0.3, std::acos(-1.0) - 0.3),
            uniform(rng, 0.0, 2.0 * std::acos(-1.0));
        const DensityMatrix rho = model.evaluate(theta);
        const SldSet slds = solve_sld_set(model, theta);
        const RealMatrix f = qfi_matrix(rho, slds);
        fa = f(0, 0);
        fb = f(1, 1);
        im = sld_expectations(rho, slds.operators[0], slds.operators[1]).im;
    } else {
        const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 4);
        const FamilyDraw fam = random_unitary_family(dim, rng);
        const DensityMatrix rho = fam.model.evaluate(fam.theta);
        const SldSet slds = solve_sld_set(fam.model, fam.theta);
        const RealMatrix f = qfi_matrix(rho, slds);
        fa = f(0, 0);
        fb = f(1, 1);
        im = sld_expectations(rho, slds.operators[0], slds.operators[1]).im;
    }
    const double product_violation = std::max(0.0, im * im - fa * fb);
    const double c2_violation =
        product_violation / std::max(1e-12, fa * fb);
    return std::max(product_violation, c2_violation);
}

double tradeoff_slack_property(std::uint64_t draw, Rng& rng) {
    const AuditDraw d = random_audit_draw(draw, rng);
    const TradeoffAudit audit = tradeoff_audit(d.family.model, d.povm,
                                               d.family.theta, {0, 1},
                                               audit_scheme());
    double worst = std::max(0.0, -audit.regret_form.slack);
    worst = std::max(worst, std::max(0.0, -audit.scaled_form.slack));
    worst = std::max(worst, std::max(0.0, -audit.product_slack));
    return worst;
}

double tradeoff_scaling_property(std::uint64_t draw, Rng& rng) {
    const AuditDraw d = random_audit_draw(draw, rng);
    const TradeoffAudit audit = tradeoff_audit(d.family.model, d.povm,
                                               d.family.theta, {0, 1},
                                               audit_scheme());
    const double scale = audit.qfi_a * audit.qfi_b;
    const double denom = std::max(1e-12, scale);
    const double lhs_gap =
        std::abs(audit.scaled_form.lhs - audit.regret_form.lhs * scale);
    const double rhs_gap =
        std::abs(audit.scaled_form.rhs - audit.regret_form.rhs * scale);
    return std::max(lhs_gap, rhs_gap) / denom;
}

double fisher_monotonicity_property(std::uint64_t draw, Rng& rng) {
    const AuditDraw d = random_audit_draw(draw, rng);
    const TradeoffAudit audit = tradeoff_audit(d.family.model, d.povm,
                                               d.family.theta, {0, 1},
                                               audit_scheme());
    return std::max(std::max(0.0, audit.cfi_a - audit.qfi_a),
                    std::max(0.0, audit.cfi_b - audit.qfi_b));
}

double fidelity_oracle_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 3);
    const DensityMatrix rho0 = random_density(dim, rng);
    const ComplexMatrix g1 = random_hermitian(dim, rng, true);
    const ComplexMatrix g2 = random_hermitian(dim, rng, true);
    ParamPoint theta(2);
    theta << uniform(rng, -0.4, 0.4), uniform(rng, -0.4, 0.4);

    // Rescale the first generator so 𝓕_α ≈ 1: the fidelity drop 1 − F then
    // sits far enough above round-off for the relative comparison.
    const ParametricModel probe = models::unitary_family(
        rho0, HermitianMatrix(g1), HermitianMatrix(g2));
    const SldSet probe_slds = solve_sld_set(probe, theta);
    const DensityMatrix probe_rho = probe.evaluate(theta);
    const double raw = qfi_matrix(probe_rho, probe_slds)(0, 0);
    const double scale = 1.0 / std::sqrt(std::max(raw, 1e-8));

    const ParametricModel model = models::unitary_family(
        rho0, HermitianMatrix(scale * g1), HermitianMatrix(g2));
    const SldSet slds = solve_sld_set(model, theta);
    const DensityMatrix rho = model.evaluate(theta);
    const double qfi = qfi_matrix(rho, slds)(0, 0);
    const double fid = oracle::qfi_fidelity(model, theta, 0, 1e-4);
    return std::abs(fid - qfi) / qfi;
}

double plaquette_oracle_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 3);
    const ComplexMatrix u = random_unitary(dim, rng);
    const Eigen::VectorXcd psi = u.col(0);
    const ComplexMatrix proj = psi * psi.adjoint();
    const DensityMatrix rho0 = validate_density(0.5 * (proj + proj.adjoint().eval()));
    const HermitianMatrix g1(random_hermitian(dim, rng, true));
    const HermitianMatrix g2(random_hermitian(dim, rng, true));
    const ParametricModel model = models::unitary_family(rho0, g1, g2);
    ParamPoint theta(2);
    theta << uniform(rng, -0.4, 0.4), uniform(rng, -0.4, 0.4);

    const DensityMatrix rho = model.evaluate(theta);
    const SldSet slds = solve_sld_set(model, theta);
    const double comm =
        curvature_commutator(rho, slds.operators[0], slds.operators[1]);
    const double loop =
        oracle::curvature_finite_loop_pure(model, theta, {0, 1}, 1e-3);
    return std::abs(comm - loop);
}

double measurement_saturation_property(std::uint64_t, Rng& rng) {
    const ParametricModel model = models::pure_bloch();
    ParamPoint theta(2);
    theta << uniform(rng, 0.4, std::acos(-1.0) - 0.4),
        uniform(rng, 0.0, 2.0 * std::acos(-1.0));
    const TradeoffAudit audit =
        tradeoff_audit(model, z_projectors(), theta, {0, 1}, audit_scheme());
    return std::abs(audit.regret_form.lhs - audit.regret_form.rhs);
}

double differencing_property(std::uint64_t draw, Rng& rng) {
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(draw % 3);
    const FamilyDraw fam = random_unitary_family(dim, rng);
    const int axis = static_cast<int>(draw % 2);
    DiffScheme numeric;
    numeric.method = DiffMethod::richardson;
    numeric.step = 1e-3;
    numeric.force_numeric = true;
    const HermitianMatrix fd = derivative(fam.model, fam.theta, axis, numeric);
    const HermitianMatrix exact = derivative(fam.model, fam.theta, axis);
    return (fd.matrix() - exact.matrix()).norm();
}

} // namespace

std::vector<PropertyResult> run_selftest(const SelftestOptions& options) {
    const std::vector<PropertySpec> specs = {
        {"sld_residual", 1e-10, sld_residual_property},
        {"sld_oracle_agreement", 1e-9, sld_oracle_property},
        {"sld_pure_shortcut", 1e-10, pure_shortcut_property},
        {"sld_trace_orthogonality", 1e-10, sld_trace_property},
        {"fullrank_route_equivalence", 1e-8, fullrank_route_property},
        {"lowrank_route_equivalence", 1e-8, lowrank_route_property},
        {"lowrank_rank1_reduction", 1e-9, rank1_reduction_property},
        {"qubit_pure_closed_form", 1e-10, qubit_pure_property},
        {"qubit_mixed_scaling", 1e-9, qubit_mixed_property},
        {"qgt_curvature_relation", 1e-10, qgt_relation_property},
        {"curvature_antisymmetry", 1e-12, antisymmetry_property},
        {"wz_antisymmetry", 1e-10, wz_antisymmetry_property},
        {"gauge_invariance", 1e-10, gauge_invariance_property},
        {"pure_saturation", 1e-9, pure_saturation_property},
        {"product_bound", 1e-9, product_bound_property},
        {"tradeoff_slacks", 1e-9, tradeoff_slack_property},
        {"tradeoff_scaling_agreement", 1e-8, tradeoff_scaling_property},
        {"fisher_monotonicity", 1e-9, fisher_monotonicity_property},
        {"fidelity_oracle", 1e-4, fidelity_oracle_property},
        {"plaquette_oracle", 1e-5, plaquette_oracle_property},
        {"measurement_saturation", 1e-9, measurement_saturation_property},
        {"differencing_accuracy", 1e-8, differencing_property},
    };

    std::vector<PropertyResult> results;
    results.reserve(specs.size());
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const PropertySpec& spec = specs[k];
        const std::uint64_t master = mix_seed(options.seed, 7000 + k);
        PropertyResult result;
        result.name = spec.name;
        result.trials = std::max(0, options.trials);
        result.tolerance = options.tol_override.value_or(spec.tolerance);
        for (int i = 0; i < result.trials; ++i) {
            Rng rng = rng_for_draw(master, static_cast<std::uint64_t>(i));
            result.max_residual =
                std::max(result.max_residual,
                         spec.worst_residual(static_cast<std::uint64_t>(i), rng));
        }
        result.passed = result.max_residual <= result.tolerance;
        results.push_back(std::move(result));
    }
    return results;
}

} // namespace qgeom
