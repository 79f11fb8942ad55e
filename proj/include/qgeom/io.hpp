#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "qgeom/geometry.hpp"
#include "qgeom/metrology.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

// On-disk matrix format:
//   {"dim": n, "re": [[...]], "im": [[...]]}
// with row-major n×n arrays. Ragged rows and non-finite entries are
// rejected with ParseError.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const ComplexMatrix& m);

// A measurement file is a JSON array of matrix objects; completeness and
// positivity are validated on load.
Povm load_povm(const std::string& path);
void save_povm(const std::string& path, const Povm& povm);

nlohmann::ordered_json report_to_json(const GeometryReport& report);
nlohmann::ordered_json audit_to_json(const TradeoffAudit& audit);

// Fixed-format scalar used everywhere a number is printed outside JSON:
// 17 significant digits, locale-independent.
std::string format_scalar(double x);

} // namespace qgeom
