#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qgeom/batch.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/geometry.hpp"
#include "qgeom/io.hpp"
#include "qgeom/metrology.hpp"
#include "qgeom/model.hpp"
#include "qgeom/selftest.hpp"

namespace {

using qgeom::ParamPoint;
using qgeom::ParametricModel;

struct ModelFlags {
    std::string name;
    std::vector<std::string> args;
    std::string rho0_path;
    std::string g1_path;
    std::string g2_path;
};

struct SchemeFlags {
    std::string method = "central";
    double step = 1e-5;
    bool numeric = false;
};

struct PointFlags {
    double theta = 0.0, phi = 0.0, alpha = 0.0, beta = 0.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--model", flags.name,
                    "family: pure-bloch, mixed-bloch, embedded-qubit, "
                    "unitary-family, constant")
        ->required();
    cmd->add_option("--model-arg", flags.args,
                    "model parameter as key=value (e.g. r=0.5, n=4)");
    cmd->add_option("--rho0", flags.rho0_path, "base state matrix file");
    cmd->add_option("--g1", flags.g1_path, "first generator matrix file");
    cmd->add_option("--g2", flags.g2_path, "second generator matrix file");
}

void add_scheme_flags(CLI::App* cmd, SchemeFlags& flags) {
    cmd->add_option("--scheme", flags.method,
                    "differencing scheme: central or richardson")
        ->check(CLI::IsMember({"central", "richardson"}));
    cmd->add_option("--step", flags.step, "finite-difference step");
    cmd->add_flag("--numeric", flags.numeric,
                  "difference numerically even when the family has analytic "
                  "derivatives");
}

void add_point_flags(CLI::App* cmd, PointFlags& point) {
    cmd->add_option("--theta", point.theta, "polar angle (radians)");
    cmd->add_option("--phi", point.phi, "azimuthal angle (radians)");
    cmd->add_option("--alpha", point.alpha, "first rotation angle (radians)");
    cmd->add_option("--beta", point.beta, "second rotation angle (radians)");
}

qgeom::DiffScheme to_scheme(const SchemeFlags& flags) {
    qgeom::DiffScheme scheme;
    scheme.method = flags.method == "richardson"
                        ? qgeom::DiffMethod::richardson
                        : qgeom::DiffMethod::central;
    scheme.step = flags.step;
    scheme.force_numeric = flags.numeric;
    return scheme;
}

std::map<std::string, double> parse_model_args(
    const std::vector<std::string>& args) {
    std::map<std::string, double> out;
    for (const std::string& arg : args) {
        const std::size_t eq = arg.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
            throw qgeom::ParseError("--model-arg: expected key=value, got \"" +
                                    arg + "\"");
        }
        const std::string key = arg.substr(0, eq);
        const std::string value = arg.substr(eq + 1);
        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size()) {
            throw qgeom::ParseError("--model-arg " + key +
                                    ": cannot parse value \"" + value + "\"");
        }
        out[key] = parsed;
    }
    return out;
}

double take_arg(std::map<std::string, double>& args, const std::string& key,
                std::optional<double> fallback = std::nullopt) {
    const auto it = args.find(key);
    if (it == args.end()) {
        if (fallback) return *fallback;
        throw qgeom::ValidationError("--model-arg " + key + "=... is required");
    }
    const double value = it->second;
    args.erase(it);
    return value;
}

ParametricModel build_model(const ModelFlags& flags) {
    std::map<std::string, double> args = parse_model_args(flags.args);
    const auto need_file = [&](const std::string& path, const char* flag) {
        if (path.empty()) {
            throw qgeom::ValidationError(std::string(flag) +
                                         " is required for --model " +
                                         flags.name);
        }
        return path;
    };

    std::optional<ParametricModel> model;
    if (flags.name == "pure-bloch") {
        model = qgeom::models::pure_bloch();
    } else if (flags.name == "mixed-bloch") {
        model = qgeom::models::mixed_bloch(take_arg(args, "r"));
    } else if (flags.name == "embedded-qubit") {
        const double n = take_arg(args, "n", 4.0);
        if (n < 1.0 || n != static_cast<double>(static_cast<long long>(n))) {
            throw qgeom::ValidationError(
                "--model-arg n must be a positive integer");
        }
        model = qgeom::models::embedded_qubit(static_cast<Eigen::Index>(n),
                                              take_arg(args, "r"));
    } else if (flags.name == "unitary-family") {
        const qgeom::DensityMatrix rho0 = qgeom::validate_density(
            qgeom::load_matrix(need_file(flags.rho0_path, "--rho0")));
        const qgeom::HermitianMatrix g1(
            qgeom::load_matrix(need_file(flags.g1_path, "--g1")));
        const qgeom::HermitianMatrix g2(
            qgeom::load_matrix(need_file(flags.g2_path, "--g2")));
        model = qgeom::models::unitary_family(rho0, g1, g2);
    } else if (flags.name == "constant") {
        const qgeom::DensityMatrix rho = qgeom::validate_density(
            qgeom::load_matrix(need_file(flags.rho0_path, "--rho0")));
        const double params = take_arg(args, "params", 1.0);
        model = qgeom::models::constant(rho, static_cast<int>(params));
    } else {
        throw qgeom::ValidationError("unknown model \"" + flags.name + "\"");
    }
    if (!args.empty()) {
        throw qgeom::ValidationError("--model-arg " + args.begin()->first +
                                     " is not accepted by --model " +
                                     flags.name);
    }
    return *model;
}

ParamPoint assemble_point(const ParametricModel& model, CLI::App* cmd,
                          const PointFlags& point) {
    const std::map<std::string, double> provided_values = {
        {"theta", point.theta},
        {"phi", point.phi},
        {"alpha", point.alpha},
        {"beta", point.beta}};
    ParamPoint theta = ParamPoint::Zero(model.param_count());
    for (const auto& [name, value] : provided_values) {
        if (cmd->count("--" + name) == 0) continue;
        bool matched = false;
        const std::vector<std::string>& names = model.param_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                theta[static_cast<Eigen::Index>(i)] = value;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw qgeom::ValidationError("model \"" + model.name() +
                                         "\" has no parameter named \"" + name +
                                         "\" (parameters: " +
                                         [&names] {
                                             std::string joined;
                                             for (const auto& n : names) {
                                                 if (!joined.empty())
                                                     joined += ", ";
                                                 joined += n;
                                             }
                                             return joined;
                                         }() +
                                         ")");
        }
    }
    return theta;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) {
        throw qgeom::ParseError("cannot open file for writing: " + output_path);
    }
    out << text;
    if (!out) {
        throw qgeom::ParseError("failed writing file: " + output_path);
    }
}

std::pair<int, int> parse_axes(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw qgeom::ParseError("--axes: expected two indices like 0,1");
    }
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string first = text.substr(0, comma);
        const std::string second = text.substr(comma + 1);
        const int a = std::stoi(first, &used_a);
        const int b = std::stoi(second, &used_b);
        if (used_a != first.size() || used_b != second.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return {a, b};
    } catch (const std::exception&) {
        throw qgeom::ParseError("--axes: expected two indices like 0,1, got \"" +
                                text + "\"");
    }
}

int run_selftest_cmd(std::uint64_t seed, int trials,
                     std::optional<double> tol_override) {
    qgeom::SelftestOptions options;
    options.seed = seed;
    options.trials = trials;
    options.tol_override = tol_override;
    const std::vector<qgeom::PropertyResult> results =
        qgeom::run_selftest(options);

    std::printf("%-28s %7s  %13s  %9s  %s\n", "property", "trials",
                "max_residual", "tolerance", "status");
    bool all_passed = true;
    for (const qgeom::PropertyResult& r : results) {
        std::printf("%-28s %7d  %13.5e  %9.1e  %s\n", r.name.c_str(), r.trials,
                    r.max_residual, r.tolerance, r.passed ? "pass" : "FAIL");
        all_passed = all_passed && r.passed;
    }
    if (trials == 0) {
        std::printf("warning: 0 trials requested; every property passes "
                    "vacuously\n");
    }
    std::printf("%s\n", all_passed ? "selftest: all properties passed"
                                   : "selftest: FAILURES detected");
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"density-matrix information geometry toolkit: SLD solvers, "
                 "Fisher/geometric-tensor/curvature reports, curvature "
                 "integration, and measurement trade-off audits"};
    app.require_subcommand(1);

    ModelFlags report_model, scan_model, chern_model, tradeoff_model;
    SchemeFlags report_scheme, scan_scheme, chern_scheme, tradeoff_scheme;
    PointFlags report_point, tradeoff_point;
    std::string report_output, scan_output, tradeoff_output;
    std::string grid_text, quantity_text = "curvature[0][1]";
    std::string sampling_text = "mid";
    std::string povm_path, axes_text = "0,1";
    int resolution = 200;
    std::uint64_t seed = 20240817;
    int trials = 200;
    double tol_value = 0.0;

    CLI::App* report = app.add_subcommand(
        "report", "geometry tables (Fisher, geometric tensor, curvature) at "
                  "one parameter point, as JSON");
    add_model_flags(report, report_model);
    add_scheme_flags(report, report_scheme);
    add_point_flags(report, report_point);
    report->add_option("--output", report_output, "write JSON here instead of stdout");

    CLI::App* scan = app.add_subcommand(
        "scan", "evaluate one report entry over a parameter grid, as CSV");
    add_model_flags(scan, scan_model);
    add_scheme_flags(scan, scan_scheme);
    scan->add_option("--grid", grid_text,
                     "axes as name=start:stop:count, comma-separated")
        ->required();
    scan->add_option("--quantity", quantity_text,
                     "entry to tabulate, e.g. curvature[0][1] or qfi[0][0]");
    scan->add_option("--sampling", sampling_text, "grid sampling: node or mid")
        ->check(CLI::IsMember({"node", "mid"}));
    scan->add_option("--output", scan_output, "write CSV here instead of stdout");

    CLI::App* chern = app.add_subcommand(
        "chern", "integrate curvature over the (theta, phi) chart and divide "
                 "by 2π");
    add_model_flags(chern, chern_model);
    add_scheme_flags(chern, chern_scheme);
    chern->add_option("--resolution", resolution, "grid cells per axis");

    CLI::App* tradeoff = app.add_subcommand(
        "tradeoff", "measurement trade-off audit for one POVM, as JSON; exit "
                    "3 when an inequality slack dips below -1e-9");
    add_model_flags(tradeoff, tradeoff_model);
    add_scheme_flags(tradeoff, tradeoff_scheme);
    add_point_flags(tradeoff, tradeoff_point);
    tradeoff->add_option("--povm", povm_path, "measurement file (JSON array)")
        ->required();
    tradeoff->add_option("--axes", axes_text, "parameter axes to audit, e.g. 0,1");
    tradeoff->add_option("--output", tradeoff_output,
                         "write JSON here instead of stdout");

    CLI::App* selftest = app.add_subcommand(
        "selftest", "randomized oracle and route-equivalence suite; exit 1 on "
                    "any failure");
    selftest->add_option("--seed", seed, "master seed");
    selftest->add_option("--trials", trials, "draws per property");
    CLI::Option* tol_opt =
        selftest->add_option("--tol", tol_value,
                             "override every property tolerance (negative "
                             "control: tiny values must fail)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (report->parsed()) {
            const ParametricModel model = build_model(report_model);
            const ParamPoint theta = assemble_point(model, report, report_point);
            const qgeom::GeometryReport result =
                qgeom::geometry_report(model, theta, to_scheme(report_scheme));
            emit(qgeom::report_to_json(result).dump(2) + "\n", report_output);
            return 0;
        }
        if (scan->parsed()) {
            const ParametricModel model = build_model(scan_model);
            const std::vector<qgeom::GridAxis> grid = qgeom::parse_grid(grid_text);
            const qgeom::QuantitySelector quantity =
                qgeom::parse_quantity(quantity_text);
            if (quantity.row >= model.param_count() ||
                quantity.col >= model.param_count()) {
                std::ostringstream msg;
                msg << "--quantity indices [" << quantity.row << "]["
                    << quantity.col << "] outside the " << model.param_count()
                    << "-parameter tables";
                throw qgeom::RangeError(msg.str());
            }
            const qgeom::Sampling sampling = sampling_text == "node"
                                                 ? qgeom::Sampling::node
                                                 : qgeom::Sampling::mid;
            std::ostringstream csv;
            qgeom::scan_csv(csv, model, grid, quantity, sampling,
                            to_scheme(scan_scheme));
            emit(csv.str(), scan_output);
            return 0;
        }
        if (chern->parsed()) {
            const ParametricModel model = build_model(chern_model);
            const double value =
                qgeom::chern_number(model, resolution, to_scheme(chern_scheme));
            std::cout << qgeom::format_scalar(value) << "\n";
            return 0;
        }
        if (tradeoff->parsed()) {
            const ParametricModel model = build_model(tradeoff_model);
            const ParamPoint theta =
                assemble_point(model, tradeoff, tradeoff_point);
            const qgeom::Povm povm = qgeom::load_povm(povm_path);
            const qgeom::TradeoffAudit audit =
                qgeom::tradeoff_audit(model, povm, theta, parse_axes(axes_text),
                                      to_scheme(tradeoff_scheme));
            emit(qgeom::audit_to_json(audit).dump(2) + "\n", tradeoff_output);
            const double min_slack =
                std::min(audit.regret_form.slack,
                         std::min(audit.scaled_form.slack, audit.product_slack));
            if (min_slack < -1e-9) {
                std::cerr << "tradeoff: inequality violated (min slack "
                          << qgeom::format_scalar(min_slack) << ")\n";
                return 3;
            }
            return 0;
        }
        if (selftest->parsed()) {
            std::optional<double> tol_override;
            if (tol_opt->count() > 0) tol_override = tol_value;
            return run_selftest_cmd(seed, trials, tol_override);
        }
    } catch (const qgeom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
