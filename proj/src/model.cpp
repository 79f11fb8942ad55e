#include "qgeom/model.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "qgeom/qubit.hpp"

namespace qgeom {

ParametricModel::ParametricModel(std::string name,
                                 Eigen::Index dim,
                                 std::vector<std::string> param_names,
                                 Evaluator evaluate,
                                 AnalyticDerivative analytic,
                                 std::map<std::string, double> metadata)
    : name_(std::move(name)),
      dim_(dim),
      param_names_(std::move(param_names)),
      evaluate_(std::move(evaluate)),
      analytic_(std::move(analytic)),
      metadata_(std::move(metadata)) {
    if (dim_ < 1) {
        throw RangeError("ParametricModel: dimension must be at least 1");
    }
    if (param_names_.empty()) {
        throw ValidationError("ParametricModel: at least one parameter required");
    }
    if (!evaluate_) {
        throw ValidationError("ParametricModel: missing evaluator");
    }
}

void ParametricModel::check_point(const ParamPoint& theta) const {
    if (theta.size() != param_count()) {
        std::ostringstream msg;
        msg << name_ << ": point has " << theta.size() << " coordinates, expected "
            << param_count();
        throw ShapeError(msg.str());
    }
    if (!theta.allFinite()) {
        throw ValidationError(name_ + ": non-finite parameter value");
    }
}

DensityMatrix ParametricModel::evaluate(const ParamPoint& theta) const {
    check_point(theta);
    DensityMatrix rho = evaluate_(theta);
    if (rho.dim() != dim_) {
        std::ostringstream msg;
        msg << name_ << ": evaluator returned dimension " << rho.dim()
            << ", expected " << dim_;
        throw NumericError(msg.str());
    }
    return rho;
}

HermitianMatrix ParametricModel::analytic_derivative(const ParamPoint& theta,
                                                     int axis) const {
    if (!analytic_) {
        throw ValidationError(name_ + ": no analytic derivative available");
    }
    check_point(theta);
    if (axis < 0 || axis >= param_count()) {
        std::ostringstream msg;
        msg << name_ << ": axis " << axis << " out of range [0, " << param_count() << ")";
        throw RangeError(msg.str());
    }
    return analytic_(theta, axis);
}

DensityMatrix evaluate(const ParametricModel& model, const ParamPoint& theta) {
    return model.evaluate(theta);
}

namespace {

ComplexMatrix central_difference(const ParametricModel& model,
                                 const ParamPoint& theta,
                                 int axis,
                                 double step) {
    ParamPoint up = theta;
    ParamPoint down = theta;
    up[axis] += step;
    down[axis] -= step;
    return (model.evaluate(up).matrix() - model.evaluate(down).matrix()) / (2.0 * step);
}

// The exact derivative of a unit-trace Hermitian family is Hermitian and
// traceless; projecting the quotient onto that set removes round-off that
// the division by a small step has amplified.
HermitianMatrix project_derivative(const ComplexMatrix& d) {
    ComplexMatrix h = 0.5 * (d + d.adjoint());
    const Eigen::Index n = h.rows();
    h -= (h.trace() / static_cast<double>(n)) * ComplexMatrix::Identity(n, n);
    return HermitianMatrix::symmetrized(h);
}

} // namespace

HermitianMatrix derivative(const ParametricModel& model,
                           const ParamPoint& theta,
                           int axis,
                           const DiffScheme& scheme) {
    if (axis < 0 || axis >= model.param_count()) {
        std::ostringstream msg;
        msg << model.name() << ": axis " << axis << " out of range [0, "
            << model.param_count() << ")";
        throw RangeError(msg.str());
    }
    if (model.has_analytic_derivative() && !scheme.force_numeric) {
        return model.analytic_derivative(theta, axis);
    }

    if (!(scheme.step >= 1e-9 && scheme.step <= 1e-2)) {
        std::ostringstream msg;
        msg << "derivative: step " << scheme.step << " outside [1e-09, 0.01]";
        throw RangeError(msg.str());
    }

    const ComplexMatrix d_full = central_difference(model, theta, axis, scheme.step);
    const ComplexMatrix d_half = central_difference(model, theta, axis, 0.5 * scheme.step);

    // Two-step consistency: estimates at ε and ε/2 agreeing nowhere while
    // sitting at the cancellation noise level means the step underflowed.
    const double m = std::max(d_full.norm(), d_half.norm());
    if (m > 0.0) {
        const double scale = std::max(1.0, model.evaluate(theta).matrix().norm());
        const double noise =
            std::numeric_limits<double>::epsilon() * scale / scheme.step;
        if ((d_full - d_half).norm() > 0.5 * m && m < 1e4 * noise) {
            std::ostringstream msg;
            msg << model.name() << ": step " << scheme.step
                << " underflows; difference quotient is round-off"
                << " (estimates disagree by " << (d_full - d_half).norm() << ")";
            throw StepUnderflowError(msg.str());
        }
    }

    if (scheme.method == DiffMethod::central) {
        return project_derivative(d_full);
    }
    return project_derivative((4.0 * d_half - d_full) / 3.0);
}

namespace {

BlochVector chart_direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi),
            std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

BlochVector chart_tangent(double theta, double phi, int axis) {
    if (axis == 0) {
        return {std::cos(theta) * std::cos(phi),
                std::cos(theta) * std::sin(phi),
                -std::sin(theta)};
    }
    return {-std::sin(theta) * std::sin(phi),
            std::sin(theta) * std::cos(phi),
            0.0};
}

ComplexMatrix bloch_tangent_matrix(double r, const ParamPoint& theta, int axis) {
    const BlochVector t = r * chart_tangent(theta[0], theta[1], axis);
    return 0.5 * (t.x() * pauli_x() + t.y() * pauli_y() + t.z() * pauli_z());
}

ComplexMatrix unitary_from_eig(const EigenSystem& e, double t) {
    const Eigen::Index n = e.values.size();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases[k] = std::exp(Complex(0.0, -t * e.values[k]));
    }
    return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

} // namespace

namespace models {

ParametricModel pure_bloch() {
    auto eval = [](const ParamPoint& theta) {
        return bloch_density(chart_direction(theta[0], theta[1]));
    };
    auto deriv = [](const ParamPoint& theta, int axis) {
        return HermitianMatrix(bloch_tangent_matrix(1.0, theta, axis));
    };
    return ParametricModel("pure-bloch", 2, {"theta", "phi"}, eval, deriv);
}

ParametricModel mixed_bloch(double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream msg;
        msg << "mixed-bloch: radius " << r << " outside [0, 1)";
        throw RangeError(msg.str());
    }
    auto eval = [r](const ParamPoint& theta) {
        return bloch_density(r * chart_direction(theta[0], theta[1]));
    };
    auto deriv = [r](const ParamPoint& theta, int axis) {
        return HermitianMatrix(bloch_tangent_matrix(r, theta, axis));
    };
    return ParametricModel("mixed-bloch", 2, {"theta", "phi"}, eval, deriv,
                           {{"r", r}});
}

ParametricModel unitary_family(const DensityMatrix& rho0,
                               const HermitianMatrix& g1,
                               const HermitianMatrix& g2) {
    const Eigen::Index n = rho0.dim();
    if (g1.dim() != n || g2.dim() != n) {
        std::ostringstream msg;
        msg << "unitary-family: generator dims " << g1.dim() << ", " << g2.dim()
            << " do not match the state dim " << n;
        throw ShapeError(msg.str());
    }

    // One shared precomputation: exponentials come from the eigenbases.
    struct Frozen {
        ComplexMatrix rho0;
        ComplexMatrix g1, g2;
        EigenSystem e1, e2;
    };
    auto frozen = std::make_shared<Frozen>();
    frozen->rho0 = rho0.matrix();
    frozen->g1 = g1.matrix();
    frozen->g2 = g2.matrix();
    frozen->e1 = eig_hermitian(g1);
    frozen->e2 = eig_hermitian(g2);

    auto rotate = [frozen](const ParamPoint& theta) {
        const ComplexMatrix u1 = unitary_from_eig(frozen->e1, theta[0]);
        const ComplexMatrix u2 = unitary_from_eig(frozen->e2, theta[1]);
        ComplexMatrix m = u2 * frozen->rho0 * u2.adjoint();
        m = u1 * m * u1.adjoint();
        return m;
    };
    auto eval = [rotate](const ParamPoint& theta) {
        return validate_density(rotate(theta));
    };
    auto deriv = [frozen, rotate](const ParamPoint& theta, int axis) {
        const ComplexMatrix m = rotate(theta);
        ComplexMatrix gen;
        if (axis == 0) {
            gen = frozen->g1;
        } else {
            const ComplexMatrix u1 = unitary_from_eig(frozen->e1, theta[0]);
            gen = u1 * frozen->g2 * u1.adjoint();
        }
        const Complex i(0.0, 1.0);
        return HermitianMatrix::symmetrized(-i * (gen * m - m * gen));
    };
    return ParametricModel("unitary-family", n, {"alpha", "beta"}, eval, deriv);
}

ParametricModel embedded_qubit(Eigen::Index n, double r) {
    if (n < 3) {
        std::ostringstream msg;
        msg << "embedded-qubit: dimension " << n
            << " leaves no kernel; need at least 3";
        throw RangeError(msg.str());
    }
    if (!(r >= 0.0 && r < 1.0)) {
        std::ostringstream msg;
        msg << "embedded-qubit: radius " << r << " outside [0, 1)";
        throw RangeError(msg.str());
    }
    auto eval = [n, r](const ParamPoint& theta) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        m.topLeftCorner(2, 2) =
            bloch_density(r * chart_direction(theta[0], theta[1])).matrix();
        return validate_density(m);
    };
    auto deriv = [n, r](const ParamPoint& theta, int axis) {
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        m.topLeftCorner(2, 2) = bloch_tangent_matrix(r, theta, axis);
        return HermitianMatrix(std::move(m));
    };
    return ParametricModel("embedded-qubit", n, {"theta", "phi"}, eval, deriv,
                           {{"r", r}, {"n", static_cast<double>(n)}});
}

ParametricModel constant(const DensityMatrix& rho, int param_count) {
    if (param_count < 1) {
        throw RangeError("constant: need at least one parameter");
    }
    std::vector<std::string> names;
    for (int k = 0; k < param_count; ++k) {
        names.push_back("x" + std::to_string(k));
    }
    const ComplexMatrix m = rho.matrix();
    const Eigen::Index n = rho.dim();
    auto eval = [m](const ParamPoint&) { return validate_density(m); };
    auto deriv = [n](const ParamPoint&, int) {
        return HermitianMatrix(ComplexMatrix::Zero(n, n));
    };
    return ParametricModel("constant", n, std::move(names), eval, deriv);
}

} // namespace models

} // namespace qgeom
