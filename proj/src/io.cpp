#include "qgeom/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qgeom/errors.hpp"

namespace qgeom {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Pulls an n×n row-major grid of finite doubles out of j[key].
RealMatrix real_grid(const json& j, const char* key, Eigen::Index n) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        std::ostringstream msg;
        msg << "matrix JSON: missing array field \"" << key << "\"";
        throw ParseError(msg.str());
    }
    const json& rows = j.at(key);
    if (static_cast<Eigen::Index>(rows.size()) != n) {
        std::ostringstream msg;
        msg << "matrix JSON: \"" << key << "\" has " << rows.size()
            << " rows, expected " << n;
        throw ParseError(msg.str());
    }
    RealMatrix out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            std::ostringstream msg;
            msg << "matrix JSON: \"" << key << "\" row " << i
                << " is ragged (expected " << n << " entries)";
            throw ParseError(msg.str());
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            const json& cell = row.at(static_cast<std::size_t>(k));
            if (!cell.is_number()) {
                std::ostringstream msg;
                msg << "matrix JSON: \"" << key << "\" entry (" << i << ", "
                    << k << ") is not a number";
                throw ParseError(msg.str());
            }
            const double v = cell.get<double>();
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "matrix JSON: \"" << key << "\" entry (" << i << ", "
                    << k << ") is not finite";
                throw ParseError(msg.str());
            }
            out(i, k) = v;
        }
    }
    return out;
}

json grid_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << path << ": " << e.what();
        throw ParseError(msg.str());
    }
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open file for writing: " + path);
    }
    out << text;
    if (!out) {
        throw ParseError("failed writing file: " + path);
    }
}

ordered_json axis_pair(double a, double b) {
    return ordered_json::array({a, b});
}

ordered_json inequality_to_json(const InequalityCheck& check) {
    ordered_json j;
    j["lhs"] = check.lhs;
    j["rhs"] = check.rhs;
    j["slack"] = check.slack;
    return j;
}

} // namespace

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("matrix JSON: expected an object with dim/re/im");
    }
    if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
        throw ParseError("matrix JSON: missing integer field \"dim\"");
    }
    const long long dim = j.at("dim").get<long long>();
    if (dim < 1 || dim > 4096) {
        std::ostringstream msg;
        msg << "matrix JSON: dim " << dim << " outside [1, 4096]";
        throw ParseError(msg.str());
    }
    const Eigen::Index n = static_cast<Eigen::Index>(dim);
    const RealMatrix re = real_grid(j, "re", n);
    const RealMatrix im = real_grid(j, "im", n);
    return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

json matrix_to_json(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << "matrix_to_json: matrix is " << m.rows() << "x" << m.cols()
            << ", expected square";
        throw ShapeError(msg.str());
    }
    json j;
    j["dim"] = m.rows();
    j["re"] = grid_to_json(m.real());
    j["im"] = grid_to_json(m.imag());
    return j;
}

ComplexMatrix load_matrix(const std::string& path) {
    return matrix_from_json(parse_file(path));
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
    write_file(path, matrix_to_json(m).dump(2) + "\n");
}

Povm load_povm(const std::string& path) {
    const json j = parse_file(path);
    if (!j.is_array() || j.empty()) {
        throw ParseError(path + ": expected a non-empty JSON array of matrices");
    }
    std::vector<ComplexMatrix> elements;
    elements.reserve(j.size());
    for (const json& entry : j) {
        elements.push_back(matrix_from_json(entry));
    }
    return Povm(std::move(elements));
}

void save_povm(const std::string& path, const Povm& povm) {
    json j = json::array();
    for (const ComplexMatrix& e : povm.elements()) {
        j.push_back(matrix_to_json(e));
    }
    write_file(path, j.dump(2) + "\n");
}

nlohmann::ordered_json report_to_json(const GeometryReport& report) {
    ordered_json j;
    ordered_json theta = ordered_json::array();
    for (Eigen::Index i = 0; i < report.theta.size(); ++i) {
        theta.push_back(report.theta[i]);
    }
    j["theta"] = std::move(theta);
    j["qfi"] = grid_to_json(report.qfi);
    j["qgt_re"] = grid_to_json(report.qgt.real());
    j["qgt_im"] = grid_to_json(report.qgt.imag());
    j["curvature"] = grid_to_json(report.curvature);
    j["branch"] = report.branch;
    ordered_json residuals;
    for (const auto& [key, value] : report.residuals) {
        residuals[key] = value;
    }
    j["residuals"] = std::move(residuals);
    return j;
}

nlohmann::ordered_json audit_to_json(const TradeoffAudit& audit) {
    ordered_json j;
    j["qfi"] = axis_pair(audit.qfi_a, audit.qfi_b);
    j["cfi"] = axis_pair(audit.cfi_a, audit.cfi_b);
    j["regret"] = axis_pair(audit.regret_a, audit.regret_b);
    j["c2"] = audit.c2;
    j["curvature"] = audit.curvature;
    j["eq1"] = inequality_to_json(audit.regret_form);
    j["eq17"] = inequality_to_json(audit.scaled_form);
    j["eq18_slack"] = audit.product_slack;
    return j;
}

std::string format_scalar(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

} // namespace qgeom
