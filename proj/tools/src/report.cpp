#include "dml/cli/report.hpp"

#include <algorithm>
#include <vector>

namespace dml::cli {

Json to_json(const Interval& x) {
  return Json{{"lo", format_rational(x.lo())}, {"hi", format_rational(x.hi())}, {"decimal", to_decimal(x)}};
}

Json to_json(const FieldElement& x) {
  if (x.is_rational()) return format_rational(x.a());
  return Json{{"a", format_rational(x.a())}, {"b", format_rational(x.b())}, {"d", x.d()}};
}

Json rational_json(const Rational& q) { return format_rational(q); }

namespace {

bool is_interval(const Json& j) { return j.is_object() && j.contains("decimal") && j.contains("lo"); }

bool is_element(const Json& j) { return j.is_object() && j.size() == 3 && j.contains("a") && j.contains("d"); }

bool is_table(const Json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const Json& r) { return r.is_object() && !is_interval(r) && !is_element(r); });
}

std::string cell(const Json& j) {
  if (j.is_null()) return "none";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (is_interval(j)) return j["decimal"].get<std::string>();
  if (is_element(j)) {
    const FieldElement x(parse_rational(j["a"].get<std::string>()), parse_rational(j["b"].get<std::string>()),
                         Field::from_discriminant_core(j["d"].get<long>()));
    return x.to_string();
  }
  if (j.is_array()) {
    std::string s = "{";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + cell(j[i]);
    return s + "}";
  }
  if (j.is_object()) {
    std::string s;
    for (const auto& [k, v] : j.items()) s += (s.empty() ? "" : "; ") + k + "=" + cell(v);
    return s;
  }
  return j.dump();
}

void render_table_rows(const std::string& title, const Json& rows, std::ostream& out) {
  std::vector<std::string> columns, nested;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items()) {
      auto& into = is_table(v) ? nested : columns;
      if (std::find(into.begin(), into.end(), k) == into.end()) into.push_back(k);
    }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : columns) width.push_back(c.size());
  for (const auto& r : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < columns.size(); ++i) {
      line.push_back(r.contains(columns[i]) ? cell(r[columns[i]]) : "");
      width[i] = std::max(width[i], line.back().size());
    }
  }
  out << "\n" << title << "\n";
  auto emit = [&](const std::vector<std::string>& row) {
    std::string s = " ";
    for (std::size_t i = 0; i < row.size(); ++i) {
      s += " " + row[i];
      if (i + 1 < row.size()) s += std::string(width[i] - row[i].size() + 1, ' ');
    }
    out << s << "\n";
  };
  emit(columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (const auto& line : cells) emit(line);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& k : nested)
      if (rows[i].contains(k) && is_table(rows[i][k]))
        render_table_rows(title + "[" + std::to_string(i + 1) + "]." + k, rows[i][k], out);
}

void render_object(const std::string& prefix, const Json& obj, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> scalars;
  std::vector<std::pair<std::string, const Json*>> sections;
  for (const auto& [k, v] : obj.items()) {
    const auto name = prefix.empty() ? k : prefix + "." + k;
    if (is_table(v) || (v.is_object() && !is_interval(v) && !is_element(v)))
      sections.emplace_back(name, &v);
    else
      scalars.emplace_back(name, cell(v));
  }
  std::size_t w = 0;
  for (const auto& [k, v] : scalars) w = std::max(w, k.size());
  if (!prefix.empty() && !scalars.empty()) out << "\n";
  for (const auto& [k, v] : scalars) out << k << std::string(w - k.size() + 2, ' ') << v << "\n";
  for (const auto& [name, v] : sections) {
    if (v->is_array())
      render_table_rows(name, *v, out);
    else
      render_object(name, *v, out);
  }
}

}  // namespace

void render_table(const Json& report, std::ostream& out) { render_object("", report, out); }

}  // namespace dml::cli
