#include "qgeom/batch.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "qgeom/io.hpp"

namespace qgeom {

namespace {

double parse_double(const std::string& text, const std::string& context) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError(context + ": cannot parse number \"" + text + "\"");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw ParseError(context + ": cannot parse number \"" + text + "\"");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    parts.push_back(current);
    return parts;
}

double sample_at(const GridAxis& axis, Sampling sampling, int index) {
    const double span = axis.stop - axis.start;
    if (sampling == Sampling::mid) {
        const double cell = span / axis.count;
        return axis.start + (index + 0.5) * cell;
    }
    if (axis.count == 1) return axis.start;
    return axis.start + span * index / (axis.count - 1);
}

} // namespace

std::vector<GridAxis> parse_grid(const std::string& text) {
    if (text.empty()) {
        throw ParseError("grid: empty specification");
    }
    std::vector<GridAxis> axes;
    for (const std::string& part : split(text, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("grid: expected name=start:stop:count, got \"" +
                             part + "\"");
        }
        GridAxis axis;
        axis.name = part.substr(0, eq);
        const std::vector<std::string> fields =
            split(part.substr(eq + 1), ':');
        if (fields.size() != 3) {
            throw ParseError("grid: expected start:stop:count after \"" +
                             axis.name + "=\"");
        }
        axis.start = parse_double(fields[0], "grid axis " + axis.name);
        axis.stop = parse_double(fields[1], "grid axis " + axis.name);
        const double count =
            parse_double(fields[2], "grid axis " + axis.name);
        if (count < 1.0 || count != std::floor(count) || count > 1e7) {
            throw ParseError("grid axis " + axis.name +
                             ": count must be a positive integer, got \"" +
                             fields[2] + "\"");
        }
        axis.count = static_cast<int>(count);
        axes.push_back(std::move(axis));
    }
    return axes;
}

QuantitySelector parse_quantity(const std::string& text) {
    // table[i][j]
    const std::size_t open1 = text.find('[');
    if (open1 == std::string::npos || open1 == 0) {
        throw ParseError("quantity: expected name[i][j], got \"" + text + "\"");
    }
    QuantitySelector sel;
    sel.table = text.substr(0, open1);
    if (sel.table != "qfi" && sel.table != "qgt_re" && sel.table != "qgt_im" &&
        sel.table != "curvature") {
        throw ParseError("quantity: unknown table \"" + sel.table +
                         "\" (expected qfi, qgt_re, qgt_im, or curvature)");
    }
    const std::size_t close1 = text.find(']', open1);
    const std::size_t open2 = text.find('[', open1 + 1);
    const std::size_t close2 = text.find(']', close1 + 1);
    if (close1 == std::string::npos || open2 != close1 + 1 ||
        close2 == std::string::npos || close2 + 1 != text.size()) {
        throw ParseError("quantity: expected name[i][j], got \"" + text + "\"");
    }
    const std::string row = text.substr(open1 + 1, close1 - open1 - 1);
    const std::string col = text.substr(open2 + 1, close2 - open2 - 1);
    const double r = parse_double(row, "quantity row");
    const double c = parse_double(col, "quantity column");
    if (r < 0 || r != std::floor(r) || c < 0 || c != std::floor(c)) {
        throw ParseError("quantity: indices must be non-negative integers");
    }
    sel.row = static_cast<int>(r);
    sel.col = static_cast<int>(c);
    return sel;
}

namespace {

double select(const GeometryReport& report, const QuantitySelector& sel) {
    if (sel.row >= report.qfi.rows() || sel.col >= report.qfi.cols()) {
        std::ostringstream msg;
        msg << "quantity: index [" << sel.row << "][" << sel.col
            << "] outside the " << report.qfi.rows() << "x" << report.qfi.cols()
            << " table";
        throw RangeError(msg.str());
    }
    if (sel.table == "qfi") return report.qfi(sel.row, sel.col);
    if (sel.table == "qgt_re") return report.qgt(sel.row, sel.col).real();
    if (sel.table == "qgt_im") return report.qgt(sel.row, sel.col).imag();
    return report.curvature(sel.row, sel.col);
}

} // namespace

void scan_csv(std::ostream& out,
              const ParametricModel& model,
              const std::vector<GridAxis>& grid,
              const QuantitySelector& quantity,
              Sampling sampling,
              const DiffScheme& scheme) {
    if (grid.empty()) {
        throw ParseError("scan: empty grid");
    }
    const std::vector<std::string>& names = model.param_names();
    // Each grid axis must name a model parameter; unnamed parameters stay 0.
    std::vector<int> axis_param(grid.size(), -1);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t p = 0; p < names.size(); ++p) {
            if (names[p] == grid[g].name) {
                axis_param[g] = static_cast<int>(p);
                break;
            }
        }
        if (axis_param[g] < 0) {
            throw ParseError("scan: model \"" + model.name() +
                             "\" has no parameter named \"" + grid[g].name +
                             "\"");
        }
        for (std::size_t h = 0; h < g; ++h) {
            if (grid[h].name == grid[g].name) {
                throw ParseError("scan: duplicate grid axis \"" + grid[g].name +
                                 "\"");
            }
        }
    }

    for (const GridAxis& axis : grid) out << axis.name << ",";
    out << "value\n";

    std::vector<int> index(grid.size(), 0);
    const auto emit_row = [&]() {
        ParamPoint theta = ParamPoint::Zero(model.param_count());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            theta[axis_param[g]] = sample_at(grid[g], sampling, index[g]);
        }
        const GeometryReport report = geometry_report(model, theta, scheme);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            out << format_scalar(theta[axis_param[g]]) << ",";
        }
        out << format_scalar(select(report, quantity)) << "\n";
    };

    // Row-major: the first axis is the outermost loop.
    while (true) {
        emit_row();
        std::size_t g = grid.size();
        while (g > 0) {
            --g;
            if (++index[g] < grid[g].count) break;
            index[g] = 0;
            if (g == 0) return;
        }
    }
}

double chern_number(const ParametricModel& model,
                    int resolution,
                    const DiffScheme& scheme) {
    if (resolution < 1) {
        std::ostringstream msg;
        msg << "chern_number: resolution " << resolution << " must be positive";
        throw RangeError(msg.str());
    }
    if (model.param_count() < 2) {
        throw ShapeError("chern_number: model needs two parameters");
    }
    const double pi = std::acos(-1.0);
    const double dtheta = pi / resolution;
    const double dphi = 2.0 * pi / resolution;
    double integral = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double theta = (i + 0.5) * dtheta;
        for (int j = 0; j < resolution; ++j) {
            const double phi = (j + 0.5) * dphi;
            ParamPoint p = ParamPoint::Zero(model.param_count());
            p[0] = theta;
            p[1] = phi;
            const DensityMatrix rho = model.evaluate(p);
            const SldSet slds = solve_sld_set(model, p, scheme);
            integral += curvature_commutator(rho, slds.operators[0],
                                             slds.operators[1]) *
                        dtheta * dphi;
        }
    }
    return integral / (2.0 * pi);
}

} // namespace qgeom
