#include "dml/cli/problem.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "dml/error.hpp"

namespace dml::cli {

ParseError::ParseError(const std::string& source, int line, std::string field, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                         (field.empty() ? "" : ": " + field) + ": " + message),
      line_(line),
      field_(std::move(field)) {}

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Height:
      return "height";
    case ProblemKind::Index:
      return "index";
    case ProblemKind::Roth:
      return "roth";
    case ProblemKind::Subspace:
      return "subspace";
    case ProblemKind::Bounds:
      return "bounds";
    case ProblemKind::Recurrence:
      return "recurrence";
  }
  return "?";
}

namespace {

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& field, const std::string& message) const {
    const int line = at.IsDefined() ? std::max(at.Mark().line, -1) + 1 : 0;
    throw ParseError(source_, line, field, message);
  }

  void check_map(const YAML::Node& node, const std::string& field) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
  }

  /// Rejects keys outside `allowed` and repeated keys.
  void check_keys(const YAML::Node& map, const std::string& field, std::initializer_list<std::string_view> allowed) const {
    check_map(map, field);
    std::set<std::string> seen;
    for (const auto& kv : map) {
      const auto key = kv.first.Scalar();
      const auto where = field.empty() ? key : field + "." + key;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail(kv.first, where, "unknown key");
      if (!seen.insert(key).second) fail(kv.first, where, "duplicate key");
    }
  }

  static std::string join(const std::string& field, const std::string& key) {
    return field.empty() ? key : field + "." + key;
  }

  YAML::Node require(const YAML::Node& map, const std::string& field, const std::string& key) const {
    YAML::Node n = map[key];
    if (!n) fail(map, join(field, key), "missing field");
    return n;
  }

  std::string scalar(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a scalar");
    return n.Scalar();
  }

  Rational rational(const YAML::Node& n, const std::string& field) const {
    const auto text = scalar(n, field);
    try {
      return parse_rational(text);
    } catch (const DomainError& e) {
      fail(n, field, "malformed rational \"" + text + "\": " + e.what());
    }
  }

  long integer(const YAML::Node& n, const std::string& field) const {
    const auto text = scalar(n, field);
    auto v = to_long(text);
    if (!v) fail(n, field, "malformed integer \"" + text + "\"");
    return *v;
  }

  bool boolean(const YAML::Node& n, const std::string& field) const {
    const auto text = scalar(n, field);
    if (text == "true") return true;
    if (text == "false") return false;
    fail(n, field, "expected true or false, got \"" + text + "\"");
  }

  Field field_of(const YAML::Node& n, const std::string& field) const {
    const long d = integer(n, field);
    try {
      return Field::from_discriminant_core(d);
    } catch (const DomainError& e) {
      fail(n, field, e.what());
    }
  }

  /// "p/q", or {a, b, d} for a + b sqrt(d).
  FieldElement element(const YAML::Node& n, const std::string& field) const {
    if (n.IsScalar()) return rational(n, field);
    if (!n.IsMap()) fail(n, field, "expected a rational or a mapping {a, b, d}");
    check_keys(n, field, {"a", "b", "d"});
    const Field k = field_of(require(n, field, "d"), join(field, "d"));
    const Rational a = n["a"] ? rational(n["a"], join(field, "a")) : Rational(0);
    const Rational b = n["b"] ? rational(n["b"], join(field, "b")) : Rational(0);
    if (k.is_rational() && b != 0) fail(n, field, "b must be 0 when d = 1");
    if (k.is_rational()) return a;
    return {a, b, k};
  }

  template <class F>
  auto sequence(const YAML::Node& n, const std::string& field, F&& item) const {
    if (!n.IsSequence()) fail(n, field, "expected a list");
    std::vector<decltype(item(n, field))> out;
    for (std::size_t i = 0; i < n.size(); ++i) out.push_back(item(n[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::vector<FieldElement> elements(const YAML::Node& n, const std::string& field) const {
    return sequence(n, field, [&](const YAML::Node& x, const std::string& f) { return element(x, f); });
  }

  std::vector<FieldElement> pair(const YAML::Node& n, const std::string& field) const {
    auto v = elements(n, field);
    if (v.size() != 2) fail(n, field, "expected exactly two entries");
    return v;
  }

  FieldElement in_field(const FieldElement& x, const Field& k, const YAML::Node& n, const std::string& field) const {
    try {
      return x.in(common_field(x.field(), k));
    } catch (const DomainError& e) {
      fail(n, field, e.what());
    }
  }

  template <class T, class F>
  T guarded(const YAML::Node& n, const std::string& field, F&& make) const {
    try {
      return make();
    } catch (const DomainError& e) {
      fail(n, field, e.what());
    }
  }

  std::pair<long, long> range(const YAML::Node& n, const std::string& field) const {
    if (n.IsSequence()) {
      if (n.size() != 2) fail(n, field, "expected [lo, hi]");
      const long lo = integer(n[0], field + "[0]");
      const long hi = integer(n[1], field + "[1]");
      if (lo > hi) fail(n, field, "lo exceeds hi");
      return {lo, hi};
    }
    const auto text = scalar(n, field);
    try {
      return parse_range(text);
    } catch (const DomainError& e) {
      fail(n, field, e.what());
    }
  }

  MultihomogPolynomial polynomial(const YAML::Node& doc, std::vector<int> degrees) const {
    MultihomogPolynomial p(degrees);
    const auto terms = require(doc, "", "terms");
    if (!terms.IsSequence()) fail(terms, "terms", "expected a list of {exponents, coefficient}");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto field = "terms[" + std::to_string(t) + "]";
      const auto& term = terms[t];
      check_keys(term, field, {"exponents", "coefficient"});
      const auto ex = require(term, field, "exponents");
      if (!ex.IsSequence() || ex.size() != degrees.size())
        fail(ex, field + ".exponents", "expected one pair per block (" + std::to_string(degrees.size()) + ")");
      BlockExponents exps;
      for (std::size_t h = 0; h < ex.size(); ++h) {
        const auto ef = field + ".exponents[" + std::to_string(h) + "]";
        if (!ex[h].IsSequence() || ex[h].size() != 2) fail(ex[h], ef, "expected a pair [i, r - i]");
        const long i = integer(ex[h][0], ef + "[0]");
        const long j = integer(ex[h][1], ef + "[1]");
        if (i < 0 || j < 0 || i + j != degrees[h])
          fail(ex[h], ef, "exponents must be nonnegative and sum to " + std::to_string(degrees[h]));
        exps.push_back(static_cast<int>(i));
      }
      const auto c = element(require(term, field, "coefficient"), field + ".coefficient");
      guarded<int>(term, field, [&] {
        p.add_term(exps, c);
        return 0;
      });
    }
    return p;
  }

  std::vector<int> degrees(const YAML::Node& doc) const {
    const auto n = require(doc, "", "degrees");
    auto out = sequence(n, "degrees", [&](const YAML::Node& x, const std::string& f) {
      const long r = integer(x, f);
      if (r < 1 || r > 1000000) fail(x, f, "degree must be a positive integer");
      return static_cast<int>(r);
    });
    if (out.empty()) fail(n, "degrees", "at least one block is required");
    return out;
  }

  std::vector<BinaryLinearForm> forms(const YAML::Node& n, const std::string& field) const {
    return sequence(n, field, [&](const YAML::Node& x, const std::string& f) {
      auto c = pair(x, f);
      return guarded<BinaryLinearForm>(x, f, [&] { return BinaryLinearForm(c[0], c[1]); });
    });
  }

  std::vector<ProjectivePoint> points(const YAML::Node& n, const std::string& field) const {
    return sequence(n, field, [&](const YAML::Node& x, const std::string& f) {
      auto c = pair(x, f);
      return guarded<ProjectivePoint>(x, f, [&] { return ProjectivePoint(c); });
    });
  }

  HeightProblem height(const YAML::Node& doc) const {
    check_keys(doc, "", {"kind", "field", "point", "form", "coefficients", "element"});
    HeightProblem out;
    if (doc["field"]) out.field = field_of(doc["field"], "field");
    int targets = 0;
    YAML::Node source;
    std::string name;
    for (auto [key, target] : {std::pair{"point", HeightTarget::Point}, std::pair{"form", HeightTarget::Form},
                               std::pair{"coefficients", HeightTarget::Coefficients},
                               std::pair{"element", HeightTarget::Element}}) {
      if (doc[key]) {
        ++targets;
        out.target = target;
        source = doc[key];
        name = key;
      }
    }
    if (targets != 1) fail(doc, "point", "give exactly one of point, form, coefficients, element");
    switch (out.target) {
      case HeightTarget::Point:
        out.values = elements(source, name);
        if (out.values.size() < 2) fail(source, name, "a point needs at least two coordinates");
        break;
      case HeightTarget::Form:
        out.values = pair(source, name);
        break;
      case HeightTarget::Coefficients:
        out.values = elements(source, name);
        if (out.values.empty()) fail(source, name, "at least one coefficient is required");
        break;
      case HeightTarget::Element:
        out.values = {element(source, name)};
        if (out.values[0].is_zero()) fail(source, name, "the element must be nonzero");
        break;
    }
    for (auto& v : out.values) v = in_field(v, out.field, source, name);
    Field k = out.field;
    for (const auto& v : out.values) k = common_field(k, v.field());
    out.field = k;
    for (auto& v : out.values) v = v.in(k);
    if (std::all_of(out.values.begin(), out.values.end(), [](const auto& v) { return v.is_zero(); }))
      fail(source, name, "all entries are zero");
    return out;
  }

  IndexProblem index(const YAML::Node& doc) const {
    check_keys(doc, "", {"kind", "degrees", "terms", "points", "forms", "complements"});
    IndexProblem out;
    const auto r = degrees(doc);
    out.polynomial = polynomial(doc, r);
    if (doc["points"] && doc["forms"]) fail(doc["forms"], "forms", "give points or forms, not both");
    if (doc["points"]) {
      out.points = points(doc["points"], "points");
    } else if (doc["forms"]) {
      for (const auto& l : forms(doc["forms"], "forms")) out.points.push_back(vanishing_point(l));
    } else {
      fail(doc, "points", "missing field");
    }
    const auto& where = doc["points"] ? doc["points"] : doc["forms"];
    if (out.points.size() != r.size()) fail(where, "points", "expected one point per block");
    if (doc["complements"]) {
      out.complements = forms(doc["complements"], "complements");
      if (out.complements.size() != r.size()) fail(doc["complements"], "complements", "expected one form per block");
    }
    return out;
  }

  RothProblem roth(const YAML::Node& doc) const {
    check_keys(doc, "", {"kind", "m", "theta", "degrees", "terms", "forms"});
    RothProblem out;
    auto& inst = out.instance;
    inst.r = degrees(doc);
    inst.m = static_cast<int>(inst.r.size());
    if (doc["m"] && integer(doc["m"], "m") != inst.m) fail(doc["m"], "m", "m must equal the number of degrees");
    inst.theta = rational(require(doc, "", "theta"), "theta");
    inst.p = polynomial(doc, inst.r);
    inst.forms = forms(require(doc, "", "forms"), "forms");
    guarded<int>(doc, "forms", [&] {
      inst.validate();
      return 0;
    });
    return out;
  }

  SubspaceProblem subspace(const YAML::Node& doc) const {
    check_keys(doc, "", {"kind", "field", "Q", "delta", "integral_inside_s", "places", "points", "box", "threads"});
    const Field k = doc["field"] ? field_of(doc["field"], "field") : Field::rationals();
    const auto places = require(doc, "", "places");
    if (!places.IsSequence() || places.size() == 0) fail(places, "places", "expected a nonempty list");
    std::vector<PlaceExponents> entries;
    for (std::size_t i = 0; i < places.size(); ++i) {
      const auto f = "places[" + std::to_string(i) + "]";
      const auto& e = places[i];
      check_keys(e, f, {"place", "forms", "exponents"});
      const auto pn = require(e, f, "place");
      const auto name = scalar(pn, f + ".place");
      PlaceExponents pe{guarded<Place>(pn, f + ".place", [&] { return Place::from_name(k, name); }), FormId::L1, FormId::L2, {}, {}};
      const auto fs = require(e, f, "forms");
      if (!fs.IsSequence() || fs.size() != 2) fail(fs, f + ".forms", "expected two of L1, L2, L3");
      pe.form1 = guarded<FormId>(fs[0], f + ".forms[0]", [&] { return parse_form_id(scalar(fs[0], f + ".forms[0]")); });
      pe.form2 = guarded<FormId>(fs[1], f + ".forms[1]", [&] { return parse_form_id(scalar(fs[1], f + ".forms[1]")); });
      const auto ex = require(e, f, "exponents");
      if (!ex.IsSequence() || ex.size() != 2) fail(ex, f + ".exponents", "expected two exponents");
      pe.e1 = rational(ex[0], f + ".exponents[0]");
      pe.e2 = rational(ex[1], f + ".exponents[1]");
      entries.push_back(std::move(pe));
    }
    SubspaceProblem out{SubspaceQuery{guarded<ExponentSystem>(places, "places",
                                                              [&] { return ExponentSystem(k, entries); }),
                                      rational(require(doc, "", "Q"), "Q"),
                                      rational(require(doc, "", "delta"), "delta")},
                        {},
                        {},
                        0};
    if (out.query.q <= 1) fail(doc["Q"], "Q", "Q must exceed 1");
    if (out.query.delta <= 0 || out.query.delta >= 1) fail(doc["delta"], "delta", "delta must lie in (0, 1)");
    if (doc["integral_inside_s"])
      out.query.integral_inside_s = boolean(doc["integral_inside_s"], "integral_inside_s");
    if (doc["points"]) {
      out.points = sequence(doc["points"], "points", [&](const YAML::Node& x, const std::string& f) {
        auto c = pair(x, f);
        for (auto& v : c) v = in_field(v, k, x, f);
        if (c[0].is_zero() && c[1].is_zero()) fail(x, f, "x must be nonzero");
        return c;
      });
    }
    if (doc["box"]) {
      out.box = integer(doc["box"], "box");
      if (*out.box < 1) fail(doc["box"], "box", "box bound must be positive");
      if (!k.is_rational()) fail(doc["box"], "box", "box scans are defined over Q only");
    }
    if (doc["threads"]) {
      const long t = integer(doc["threads"], "threads");
      if (t < 0 || t > 1024) fail(doc["threads"], "threads", "expected 0..1024");
      out.threads = static_cast<unsigned>(t);
    }
    if (out.points.empty() && !out.box) fail(doc, "points", "give points, box, or both");
    return out;
  }

  BoundsProblem bounds(const YAML::Node& doc) const {
    check_keys(doc, "", {"kind", "deltas", "final", "gaps"});
    BoundsProblem out;
    if (doc["deltas"]) {
      out.deltas = sequence(doc["deltas"], "deltas", [&](const YAML::Node& x, const std::string& f) {
        auto d = rational(x, f);
        if (d <= 0 || d >= 1) fail(x, f, "delta must lie in (0, 1)");
        return d;
      });
    }
    if (doc["final"]) out.final_count = boolean(doc["final"], "final");
    if (doc["gaps"]) {
      const auto g = doc["gaps"];
      check_keys(g, "gaps", {"E", "values"});
      out.gap_e = rational(require(g, "gaps", "E"), "gaps.E");
      if (*out.gap_e <= 1) fail(g["E"], "gaps.E", "E must exceed 1");
      out.gap_values = sequence(require(g, "gaps", "values"), "gaps.values",
                                [&](const YAML::Node& x, const std::string& f) {
                                  auto v = rational(x, f);
                                  if (v <= 1) fail(x, f, "values must exceed 1");
                                  return v;
                                });
    }
    if (out.deltas.empty() && !out.final_count && !out.gap_e) fail(doc, "deltas", "nothing to verify");
    return out;
  }

  RecurrenceProblem recurrence(const YAML::Node& doc) const {
    auto el = [&](const char* key) { return element(require(doc, "", key), key); };
    const bool unit = static_cast<bool>(doc["alpha"]) || doc["beta"] || doc["M"];
    const bool binary = static_cast<bool>(doc["nu1"]) || doc["nu0"];
    const bool ternary = static_cast<bool>(doc["mu2"]) || doc["mu1"] || doc["mu0"];
    if (unit + binary + ternary != 1)
      fail(doc, "kind", "expected exactly one of a unit equation (alpha, beta), a binary (nu1, nu0) or a ternary (mu2, mu1, mu0) recurrence");
    if (unit) {
      check_keys(doc, "", {"kind", "a", "b", "alpha", "beta", "M"});
      UnitEquationInput in{{el("a"), el("b"), el("alpha"), el("beta")}, integer(require(doc, "", "M"), "M")};
      if (in.range < 1) fail(doc["M"], "M", "M must be at least 1");
      return in;
    }
    if (binary) {
      check_keys(doc, "", {"kind", "nu1", "nu0", "u0", "u1", "c", "range"});
      BinaryInput in{{el("nu1"), el("nu0"), el("u0"), el("u1")}, {}, {}};
      if (in.recurrence.nu0.is_zero()) fail(doc["nu0"], "nu0", "nu0 must be nonzero");
      if (doc["c"]) in.c = el("c");
      if (doc["range"]) in.range = range(doc["range"], "range");
      return in;
    }
    check_keys(doc, "", {"kind", "mu2", "mu1", "mu0", "v0", "v1", "v2", "range"});
    TernaryInput in{{el("mu2"), el("mu1"), el("mu0"), el("v0"), el("v1"), el("v2")}, {}};
    if (in.recurrence.mu0.is_zero()) fail(doc["mu0"], "mu0", "mu0 must be nonzero");
    if (doc["range"]) in.range = range(doc["range"], "range");
    return in;
  }

  ProblemFile parse(std::string_view text) const {
    std::vector<YAML::Node> docs;
    try {
      docs = YAML::LoadAll(std::string(text));
    } catch (const YAML::Exception& e) {
      throw ParseError(source_, e.mark.line + 1, "", e.msg);
    }
    if (docs.size() != 1) throw ParseError(source_, 0, "", "expected exactly one problem per file");
    const auto& doc = docs.front();
    check_map(doc, "");
    const auto kind = scalar(require(doc, "", "kind"), "kind");
    ProblemFile out;
    out.source = source_;
    if (kind == "height") {
      out.kind = ProblemKind::Height;
      out.body = height(doc);
    } else if (kind == "index") {
      out.kind = ProblemKind::Index;
      out.body = index(doc);
    } else if (kind == "roth") {
      out.kind = ProblemKind::Roth;
      out.body = roth(doc);
    } else if (kind == "subspace") {
      out.kind = ProblemKind::Subspace;
      out.body = subspace(doc);
    } else if (kind == "bounds") {
      out.kind = ProblemKind::Bounds;
      out.body = bounds(doc);
    } else if (kind == "recurrence") {
      out.kind = ProblemKind::Recurrence;
      out.body = recurrence(doc);
    } else {
      fail(doc["kind"], "kind", "unknown kind \"" + kind + "\"");
    }
    return out;
  }

 private:
  std::string source_;
};

}  // namespace

std::pair<long, long> parse_range(std::string_view text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  if (colon == std::string_view::npos) throw DomainError("range must look like lo:hi, got \"" + std::string(text) + "\"");
  const auto lo = to_long(text.substr(0, colon));
  const auto hi = to_long(text.substr(colon + 1));
  if (!lo || !hi) throw DomainError("range must look like lo:hi, got \"" + std::string(text) + "\"");
  if (*lo > *hi) throw DomainError("range lower end exceeds upper end");
  return {*lo, *hi};
}

ProblemFile parse_problem_text(std::string_view text, const std::string& source) { return Reader(source).parse(text); }

ProblemFile parse_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str(), path.string());
}

}  // namespace dml::cli
