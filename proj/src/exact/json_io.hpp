#pragma once

#include "exact/series.hpp"

#include <json.hpp>

namespace voac::exact {

// half-unit exponent to decimal string: 2 -> "1", 3 -> "1.5", -1 -> "-0.5"
std::string exp2_str(int e2);
int exp2_parse(const std::string& s);

nlohmann::json rational_json(const Rational& r); // {"num": "...", "den": "..."}
Rational rational_from_json(const nlohmann::json& j);

// {"num","den"} strings; polynomial expression strings when non-constant
nlohmann::json rf_json(const RationalFunction& f);

// {"genus": g, "order": "T", "terms": [{"rho_exp": [...], "coeff": {...}}]}
nlohmann::json series_json(const TruncatedSeries& s);
// accepts rational coefficients only (no expression parser)
TruncatedSeries series_from_json(const nlohmann::json& j);

} // namespace voac::exact
