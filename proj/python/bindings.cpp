#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "qgeom/batch.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/io.hpp"
#include "qgeom/metrology.hpp"
#include "qgeom/model.hpp"
#include "qgeom/oracle.hpp"
#include "qgeom/selftest.hpp"
#include "qgeom/sld.hpp"

namespace py = pybind11;

namespace {

qgeom::DiffScheme make_scheme(const std::string& method, double step,
                              bool numeric) {
    if (method != "central" && method != "richardson") {
        throw qgeom::ValidationError("scheme must be central or richardson, got " +
                                     method);
    }
    qgeom::DiffScheme scheme;
    scheme.method = method == "richardson" ? qgeom::DiffMethod::richardson
                                           : qgeom::DiffMethod::central;
    scheme.step = step;
    scheme.force_numeric = numeric;
    return scheme;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
    using nlohmann::ordered_json;
    switch (j.type()) {
        case ordered_json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) {
                d[py::str(key)] = json_to_py(value);
            }
            return d;
        }
        case ordered_json::value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case ordered_json::value_t::string:
            return py::str(j.get<std::string>());
        case ordered_json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case ordered_json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case ordered_json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case ordered_json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

qgeom::Povm povm_from_list(const std::vector<qgeom::ComplexMatrix>& elements) {
    return qgeom::Povm(elements);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Information geometry of parametric density matrices: SLD "
              "solvers, Fisher/geometric-tensor/curvature reports, and "
              "measurement trade-off audits.";

    py::register_exception<qgeom::Error>(m, "QgeomError", PyExc_RuntimeError);
    py::register_exception<qgeom::NumericError>(m, "NumericError",
                                                PyExc_RuntimeError);
    py::register_exception<qgeom::ValidationError>(m, "ValidationError",
                                                   PyExc_ValueError);

    py::class_<qgeom::ParametricModel>(m, "Model")
        .def_property_readonly("name", &qgeom::ParametricModel::name)
        .def_property_readonly("dim", &qgeom::ParametricModel::dim)
        .def_property_readonly("param_names",
                               &qgeom::ParametricModel::param_names)
        .def("evaluate",
             [](const qgeom::ParametricModel& model,
                const Eigen::VectorXd& theta) {
                 return model.evaluate(theta).matrix();
             },
             py::arg("theta"),
             "Density matrix at the given parameter point.");

    m.def("pure_bloch", &qgeom::models::pure_bloch,
          "Pure qubit family over the (theta, phi) chart.");
    m.def("mixed_bloch", &qgeom::models::mixed_bloch, py::arg("r"),
          "Fixed-radius mixed qubit family, r in [0, 1).");
    m.def("embedded_qubit", &qgeom::models::embedded_qubit, py::arg("n"),
          py::arg("r"),
          "mixed_bloch(r) in the top-left block of an n-dimensional state.");
    m.def(
        "unitary_family",
        [](const qgeom::ComplexMatrix& rho0, const qgeom::ComplexMatrix& g1,
           const qgeom::ComplexMatrix& g2) {
            return qgeom::models::unitary_family(qgeom::validate_density(rho0),
                                                 qgeom::HermitianMatrix(g1),
                                                 qgeom::HermitianMatrix(g2));
        },
        py::arg("rho0"), py::arg("g1"), py::arg("g2"),
        "Two-angle rotation family exp(-i a G1) exp(-i b G2) rho0 (...)†.");

    m.def(
        "validate_density",
        [](const qgeom::ComplexMatrix& matrix) {
            return qgeom::validate_density(matrix).matrix();
        },
        py::arg("matrix"),
        "Checks Hermiticity, unit trace, and positivity; raises ValueError "
        "listing every violation.");

    m.def(
        "solve_sld",
        [](const qgeom::ComplexMatrix& rho, const qgeom::ComplexMatrix& drho) {
            const qgeom::Spectrum spec =
                qgeom::spectral_decompose(qgeom::validate_density(rho));
            return qgeom::solve_sld(spec, qgeom::HermitianMatrix(drho));
        },
        py::arg("rho"), py::arg("drho"),
        "Hermitian L solving drho = (L rho + rho L)/2 in the minimal-norm "
        "gauge.");

    m.def(
        "sld_vec_solve",
        [](const qgeom::ComplexMatrix& rho, const qgeom::ComplexMatrix& drho) {
            return qgeom::oracle::sld_vec_solve(qgeom::validate_density(rho),
                                                qgeom::HermitianMatrix(drho));
        },
        py::arg("rho"), py::arg("drho"),
        "Independent least-squares reference solution of the same equation.");

    m.def(
        "bures_fidelity",
        [](const qgeom::ComplexMatrix& rho, const qgeom::ComplexMatrix& sigma) {
            return qgeom::oracle::bures_fidelity(qgeom::validate_density(rho),
                                                 qgeom::validate_density(sigma));
        },
        py::arg("rho"), py::arg("sigma"), "Tr sqrt(sqrt(rho) sigma sqrt(rho)).");

    m.def(
        "report",
        [](const qgeom::ParametricModel& model, const Eigen::VectorXd& theta,
           const std::string& method, double step, bool numeric) {
            const qgeom::GeometryReport report = qgeom::geometry_report(
                model, theta, make_scheme(method, step, numeric));
            return json_to_py(qgeom::report_to_json(report));
        },
        py::arg("model"), py::arg("theta"), py::arg("method") = "central",
        py::arg("step") = 1e-5, py::arg("numeric") = false,
        "Fisher matrix, geometric tensor, curvature, branch, and cross-route "
        "residuals at one point, as a dict.");

    m.def(
        "tradeoff",
        [](const qgeom::ParametricModel& model,
           const std::vector<qgeom::ComplexMatrix>& povm,
           const Eigen::VectorXd& theta, std::pair<int, int> axes,
           const std::string& method, double step, bool numeric) {
            const qgeom::TradeoffAudit audit = qgeom::tradeoff_audit(
                model, povm_from_list(povm), theta, axes,
                make_scheme(method, step, numeric));
            return json_to_py(qgeom::audit_to_json(audit));
        },
        py::arg("model"), py::arg("povm"), py::arg("theta"),
        py::arg("axes") = std::pair<int, int>(0, 1),
        py::arg("method") = "central", py::arg("step") = 1e-5,
        py::arg("numeric") = false,
        "Quantum/classical Fisher pairs, regrets, incompatibility, and both "
        "trade-off inequality forms, as a dict.");

    m.def(
        "chern_number",
        [](const qgeom::ParametricModel& model, int resolution,
           const std::string& method, double step, bool numeric) {
            return qgeom::chern_number(model, resolution,
                                       make_scheme(method, step, numeric));
        },
        py::arg("model"), py::arg("resolution") = 200,
        py::arg("method") = "central", py::arg("step") = 1e-5,
        py::arg("numeric") = false,
        "Midpoint-rule curvature integral over the (theta, phi) chart over "
        "2 pi.");

    m.def(
        "selftest",
        [](std::uint64_t seed, int trials) {
            qgeom::SelftestOptions options;
            options.seed = seed;
            options.trials = trials;
            py::list out;
            for (const qgeom::PropertyResult& r :
                 qgeom::run_selftest(options)) {
                py::dict d;
                d["name"] = r.name;
                d["trials"] = r.trials;
                d["max_residual"] = r.max_residual;
                d["tolerance"] = r.tolerance;
                d["passed"] = r.passed;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("seed") = 20240817, py::arg("trials") = 200,
        "Randomized oracle and route-equivalence suite; one dict per "
        "property.");
}
