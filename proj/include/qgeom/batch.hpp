#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qgeom/geometry.hpp"

namespace qgeom {

// One scan axis: `count` samples over [start, stop]. With midpoint sampling
// the samples sit at the centers of `count` equal cells; with node sampling
// they include both endpoints.
struct GridAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
};

enum class Sampling { node, mid };

// Parses "theta=0:3.14159:64,phi=0:6.28318:64". Counts must be positive.
std::vector<GridAxis> parse_grid(const std::string& text);

// One entry of a geometry report selected by name and indices, e.g.
// "curvature[0][1]", "qfi[0][0]", "qgt_re[0][1]", "qgt_im[0][1]".
struct QuantitySelector {
    std::string table;
    int row = 0;
    int col = 0;
};

QuantitySelector parse_quantity(const std::string& text);

// Evaluates the selected quantity over the grid and writes CSV: a header
// with the axis names plus "value", then one row per grid point in
// row-major order (first axis outermost). Layout and float formatting are
// deterministic, so identical inputs give byte-identical output.
void scan_csv(std::ostream& out,
              const ParametricModel& model,
              const std::vector<GridAxis>& grid,
              const QuantitySelector& quantity,
              Sampling sampling = Sampling::mid,
              const DiffScheme& scheme = {});

// Midpoint-rule integral of Ω over the chart [0, π] × [0, 2π), divided by
// 2π. Converges to the integer Chern number for closed two-level families.
double chern_number(const ParametricModel& model,
                    int resolution,
                    const DiffScheme& scheme = {});

} // namespace qgeom
