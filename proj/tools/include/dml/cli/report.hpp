#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

#include "dml/exact/interval.hpp"
#include "dml/exact/quadratic.hpp"

namespace dml::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dml-report/1";

/// {"lo": "p/q", "hi": "p/q", "decimal": "m ± r"}.
Json to_json(const Interval& x);

/// "p/q" for rational values, {"a", "b", "d"} otherwise.
Json to_json(const FieldElement& x);

Json rational_json(const Rational& q);

/// Aligned plain-text rendering of a report.  Intervals show their decimal
/// form, field elements their a+b*sqrt(d) form, lists of records become
/// tables; nothing is dropped, so the table and the JSON carry the same
/// values.
void render_table(const Json& report, std::ostream& out);

}  // namespace dml::cli
