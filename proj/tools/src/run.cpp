#include "dml/cli/run.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <optional>
#include <variant>

#include "dml/bounds/bounds.hpp"
#include "dml/cli/problem.hpp"
#include "dml/cli/report.hpp"
#include "dml/error.hpp"
#include "dml/heights/places.hpp"

namespace dml::cli {

namespace {

struct Settings {
  bool json = false;
  long bits = kDefaultBits;
  long max_bits = kDefaultMaxBits;
};

/// Raised for bad flags or flag values after CLI parsing succeeded.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string status_name(ExitCode code) {
  switch (code) {
    case ExitCode::Verified:
      return "verified";
    case ExitCode::Negative:
      return "negative";
    case ExitCode::InputError:
      return "input-error";
    case ExitCode::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

Json header(const std::string& command) { return Json{{"schema", kSchema}, {"command", command}}; }

ExitCode finish(Json& report, ExitCode code) {
  report["status"] = status_name(code);
  report["exit_code"] = static_cast<int>(code);
  return code;
}

std::string point_string(std::span<const FieldElement> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " : " : "") + v[i].to_string();
  return s + ")";
}

Json elements_json(std::span<const FieldElement> v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json bound_json(const BoundLine& b) {
  return Json{{"statement", b.statement}, {"bound", b.bound.get_str()}, {"observed", b.observed}, {"within", b.within}};
}

ExitCode height_command(const HeightProblem& p, const Settings& s, Json& r) {
  const char* targets[] = {"point", "form", "coefficients", "element"};
  r["field"] = p.field.name();
  r["target"] = targets[static_cast<int>(p.target)];
  r["input"] = elements_json(p.values);
  r["bits"] = s.bits;
  if (p.target == HeightTarget::Element) {
    const auto pf = check_product_formula(p.values[0], s.bits);
    Json rows = Json::array();
    for (std::size_t i = 0; i < pf.places.size(); ++i)
      rows.push_back(Json{{"place", pf.places[i].name()}, {"abs", to_json(pf.factors[i])}});
    r["places"] = rows;
    r["product"] = to_json(pf.product);
    r["exact"] = pf.exact;
    r["product_formula_holds"] = pf.holds;
    return finish(r, pf.holds ? ExitCode::Verified : ExitCode::Negative);
  }
  const auto exact = exact_height(p.values);
  Interval h, logh;
  if (p.target == HeightTarget::Point) {
    const ProjectivePoint x(p.values);
    h = height_point(x, s.bits);
    logh = log_height_point(x, s.bits);
  } else if (p.target == HeightTarget::Form) {
    const BinaryLinearForm l(p.values[0], p.values[1]);
    h = height_linear_form(l, s.bits);
    logh = log_height_linear_form(l, s.bits);
  } else {
    h = height_coefficients(p.values, s.bits);
    logh = log_height_coefficients(p.values, s.bits);
  }
  r["height"] = to_json(h);
  r["log_height"] = to_json(logh);
  r["radicand"] = rational_json(exact.radicand);
  r["root"] = exact.root;
  const auto v = exact.exact();
  r["exact_value"] = v ? Json(format_rational(*v)) : Json(nullptr);
  return finish(r, ExitCode::Verified);
}

ExitCode index_command(const IndexProblem& p, Json& r) {
  r["degrees"] = p.polynomial.degrees();
  r["polynomial"] = p.polynomial.to_string();
  std::vector<BinaryLinearForm> complements = p.complements;
  if (complements.empty())
    for (const auto& x : p.points) complements.push_back(default_complement(x));
  Json rows = Json::array();
  for (std::size_t h = 0; h < p.points.size(); ++h)
    rows.push_back(Json{{"block", h + 1},
                        {"degree", p.polynomial.degrees()[h]},
                        {"point", p.points[h].to_string()},
                        {"complement", complements[h].to_string()}});
  r["blocks"] = rows;
  const auto value = index(p.polynomial, p.points, complements);
  r["value_at_points"] = to_json(p.polynomial.evaluate(p.points));
  r["index"] = rational_json(value);
  r["index_decimal"] = to_decimal(value);
  return finish(r, ExitCode::Verified);
}

ExitCode roth_command(const RothProblem& p, const Settings& s, Json& r) {
  const auto& inst = p.instance;
  r["m"] = inst.m;
  r["theta"] = rational_json(inst.theta);
  r["degrees"] = inst.r;
  r["polynomial"] = inst.p.to_string();
  const auto rep = check_roth_instance(inst, s.bits, s.max_bits);
  Json ratios = Json::array();
  for (const auto& v : rep.ratio_verdicts)
    ratios.push_back(Json{{"h", v.h},
                          {"r_h/r_h+1", rational_json(v.ratio)},
                          {"threshold", rational_json(v.threshold)},
                          {"ok", v.ok}});
  r["ratio_checks"] = ratios;
  r["log_height_P"] = to_json(rep.log_height_p);
  r["leading_coefficient"] = rational_json(rep.leading_coefficient);
  Json heights = Json::array();
  for (const auto& v : rep.height_verdicts)
    heights.push_back(Json{{"h", v.h},
                           {"form", inst.forms[v.h - 1].to_string()},
                           {"point", rep.points[v.h - 1].to_string()},
                           {"r_h*log H(L_h)", to_json(v.lhs)},
                           {"threshold", to_json(v.rhs)},
                           {"verdict", to_string(v.ordering)},
                           {"ok", v.ok},
                           {"certain", v.certain}});
  r["height_checks"] = heights;
  r["ratios_hold"] = rep.ratios_hold;
  r["heights_hold"] = rep.heights_hold;
  r["index"] = rational_json(rep.conclusion_index);
  r["index_below_theta"] = rep.conclusion_holds;
  r["bits_used"] = rep.bits_used;
  r["indeterminate"] = rep.indeterminate;
  if (rep.indeterminate) return finish(r, ExitCode::Indeterminate);
  return finish(r, rep.hypotheses_hold() && rep.conclusion_holds ? ExitCode::Verified : ExitCode::Negative);
}

ExitCode subspace_command(const SubspaceProblem& p, const Settings& s, Json& r) {
  const auto& q = p.query;
  r["field"] = q.system.field().name();
  r["Q"] = rational_json(q.q);
  r["delta"] = rational_json(q.delta);
  r["integral_inside_s"] = q.integral_inside_s;
  Json places = Json::array();
  for (const auto& e : q.system.entries())
    places.push_back(Json{{"place", e.place.name()},
                          {"form1", to_string(e.form1)},
                          {"form2", to_string(e.form2)},
                          {"e1", rational_json(e.e1)},
                          {"e2", rational_json(e.e2)}});
  r["places"] = places;
  const auto sys = check_exponent_system(q.system);
  r["exponent_system"] = Json{{"total", rational_json(sys.total)},
                              {"max_partial", rational_json(sys.max_partial)},
                              {"min_partial", rational_json(sys.min_partial)},
                              {"holds", sys.holds}};
  const auto pre = check_query_precondition(q);
  r["precondition"] = Json{{"Q > 4^delta", pre.q_exceeds_4_pow_delta},
                           {"Q > 4^(1/delta)", pre.q_exceeds_4_pow_inv_delta},
                           {"note", "Q > 4^(1/delta) is informational"}};
  if (!sys.holds || !pre.q_exceeds_4_pow_delta) return finish(r, ExitCode::Negative);
  const SystemEvaluator eval(q);
  if (!p.points.empty()) {
    Json rows = Json::array();
    for (const auto& x : p.points)
      rows.push_back(Json{{"x", point_string(x)}, {"satisfies", eval.satisfies(x[0], x[1])}});
    r["points"] = rows;
  }
  ExitCode code = ExitCode::Verified;
  if (p.box) {
    const auto scan = scan_box(q, *p.box, p.threads);
    const auto bound = line_count_bound(q.delta, s.bits);
    Json lines = Json::array();
    for (const auto& l : scan.lines) lines.push_back(Json{{"line", l.representative.to_string()}, {"solutions", l.count}});
    const Rational n(static_cast<long>(scan.lines.size()));
    std::optional<bool> within;
    if (n <= bound.lo()) within = true;
    if (n > bound.hi()) within = false;
    r["scan"] = Json{{"box", *p.box},
                     {"examined", scan.examined},
                     {"solutions", scan.solutions.size()},
                     {"line_count", scan.lines.size()},
                     {"line_bound", to_json(bound)},
                     {"within_bound", within ? Json(*within) : Json(nullptr)},
                     {"lines", lines}};
    if (!within) code = ExitCode::Indeterminate;
    else if (!*within) code = ExitCode::Negative;
  }
  return finish(r, code);
}

std::string verdict(const CheckLine& c) {
  if (c.relation == Relation::Info) return "INFO";
  if (c.lhs.is_point() && c.rhs.is_point() && c.lhs.lo() == c.rhs.lo()) return "EQUAL";
  return to_string(c.ordering);
}

Json bound_report_json(const BoundReport& b) {
  Json j{{"title", b.title}};
  if (b.m != 0) {
    j["delta"] = rational_json(b.delta);
    j["m"] = b.m;
    j["epsilon"] = rational_json(b.epsilon);
    j["gamma"] = rational_json(b.gamma);
  }
  j["bits_used"] = b.bits_used;
  j["indeterminate"] = b.indeterminate;
  j["all_hold"] = b.all_hold();
  Json rows = Json::array();
  for (const auto& c : b.checks)
    rows.push_back(Json{{"check", c.name},
                        {"lhs", to_json(c.lhs)},
                        {"relation", to_string(c.relation)},
                        {"rhs", to_json(c.rhs)},
                        {"verdict", verdict(c)},
                        {"holds", c.holds},
                        {"note", c.note}});
  j["checks"] = rows;
  return j;
}

ExitCode bounds_command(const BoundsProblem& p, const Settings& s, Json& r) {
  r["bits"] = s.bits;
  std::vector<std::future<BoundReport>> jobs;
  for (const auto& d : p.deltas)
    jobs.push_back(std::async(std::launch::async, [&, d] { return verify_line_bound_derivation(d, s.bits, s.max_bits); }));
  if (p.final_count)
    jobs.push_back(std::async(std::launch::async, [&] { return verify_final_count_arithmetic(s.bits, s.max_bits); }));
  bool negative = false, indeterminate = false;
  Json reports = Json::array();
  for (auto& j : jobs) {
    const auto b = j.get();
    for (const auto& c : b.checks) {
      if (c.certain && !c.holds) negative = true;
      if (!c.certain) indeterminate = true;
    }
    indeterminate = indeterminate || b.indeterminate;
    reports.push_back(bound_report_json(b));
  }
  if (!reports.empty()) r["reports"] = reports;
  if (p.gap_e) {
    r["gaps"] = Json{{"E", rational_json(*p.gap_e)},
                     {"values", p.gap_values.size()},
                     {"intervals", count_gap_intervals(p.gap_values, *p.gap_e)}};
  }
  if (negative) return finish(r, ExitCode::Negative);
  return finish(r, indeterminate ? ExitCode::Indeterminate : ExitCode::Verified);
}

struct RecurOverrides {
  std::optional<FieldElement> c;
  std::optional<std::pair<long, long>> range;
  std::optional<long> m;
};

ExitCode recurrence_command(const RecurrenceProblem& p, const RecurOverrides& o, Json& r) {
  if (const auto* u = std::get_if<UnitEquationInput>(&p)) {
    if (o.c || o.range) throw UsageError("--c and --range apply to recurrences; use --M for unit equations");
    const long m = o.m.value_or(u->range);
    if (m < 1) throw UsageError("--M must be at least 1");
    const auto& q = u->problem;
    r["type"] = "unit-equation";
    r["equation"] = "a*alpha^m + b*beta^m + 1 = 0";
    r["a"] = to_json(q.a);
    r["b"] = to_json(q.b);
    r["alpha"] = to_json(q.alpha);
    r["beta"] = to_json(q.beta);
    const auto rep = solve_unit_equation(q, m);
    r["range"] = Json::array({rep.range_lo, rep.range_hi});
    r["solutions"] = rep.solutions;
    r["count"] = rep.solutions.size();
    if (rep.certificate) {
      auto w = [](const DominanceWitness& d) {
        return Json{{"side", d.side}, {"dominant_term", d.dominant_term}, {"place", d.place}};
      };
      r["certificate"] = Json::array({w(rep.certificate->first), w(rep.certificate->second)});
      r["complete"] = true;
    } else {
      r["certificate"] = nullptr;
      r["complete"] = false;
    }
    r["bound"] = bound_json(rep.bound);
    return finish(r, rep.bound.within ? ExitCode::Verified : ExitCode::Negative);
  }
  if (o.m) throw UsageError("--M applies to unit equations only");
  if (const auto* b = std::get_if<BinaryInput>(&p)) {
    const auto& rec = b->recurrence;
    const FieldElement c = o.c ? *o.c : b->c.value_or(FieldElement(0));
    const auto range = o.range ? *o.range : b->range.value_or(std::pair{-kDefaultRecurrenceRange, kDefaultRecurrenceRange});
    r["type"] = "binary-recurrence";
    r["recurrence"] = "u(n+2) = nu1*u(n+1) + nu0*u(n)";
    r["nu1"] = to_json(rec.nu1);
    r["nu0"] = to_json(rec.nu0);
    r["u0"] = to_json(rec.u0);
    r["u1"] = to_json(rec.u1);
    r["c"] = to_json(c);
    const auto rep = multiplicity_count(rec, c, range.first, range.second);
    r["range"] = Json::array({rep.range_lo, rep.range_hi});
    r["solutions"] = rep.solutions;
    r["count"] = rep.solutions.size();
    r["bound"] = bound_json(rep.bound);
    r["notes"] = rep.notes;
    return finish(r, rep.bound.within ? ExitCode::Verified : ExitCode::Negative);
  }
  const auto& t = std::get<TernaryInput>(p);
  if (o.c) throw UsageError("--c does not apply to ternary recurrences (zeros are counted)");
  const auto range = o.range ? *o.range : t.range.value_or(std::pair{-kDefaultRecurrenceRange, kDefaultRecurrenceRange});
  const auto& rec = t.recurrence;
  r["type"] = "ternary-recurrence";
  r["recurrence"] = "v(m+3) = mu2*v(m+2) + mu1*v(m+1) + mu0*v(m)";
  r["mu2"] = to_json(rec.mu2);
  r["mu1"] = to_json(rec.mu1);
  r["mu0"] = to_json(rec.mu0);
  r["initial"] = Json::array({to_json(rec.v0), to_json(rec.v1), to_json(rec.v2)});
  const auto rep = ternary_zero_count(rec, range.first, range.second);
  r["range"] = Json::array({rep.range_lo, rep.range_hi});
  r["solutions"] = rep.solutions;
  r["count"] = rep.solutions.size();
  r["bound"] = bound_json(rep.bound);
  r["notes"] = rep.notes;
  return finish(r, rep.bound.within ? ExitCode::Verified : ExitCode::Negative);
}

long parse_bits(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long b = std::stol(text, &used);
    if (used == text.size() && b >= 8 && b <= (1L << 20)) return b;
  } catch (const std::exception&) {
  }
  throw UsageError(what + " must be an integer in [8, 1048576], got \"" + text + "\"");
}

/// CLI11 reads "-10:10" as a flag; glue negative values to their option.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  static const std::vector<std::string> valued = {"--range", "--c", "--delta", "--bits", "--max-bits", "--M"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const bool glue = i + 1 < args.size() && std::find(valued.begin(), valued.end(), args[i]) != valued.end() &&
                      args[i + 1].size() > 1 && args[i + 1][0] == '-' && std::isdigit(static_cast<unsigned char>(args[i + 1][1]));
    if (glue) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

template <class T>
const T& expect(const ProblemFile& f, const std::string& command) {
  if (const auto* body = std::get_if<T>(&f.body)) return *body;
  throw UsageError(f.source + ": command '" + command + "' cannot run a problem of kind '" + to_string(f.kind) + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact heights, index, Roth and subspace checks, certified constant verification", "dml"};
  app.require_subcommand(1);
  Settings s;
  std::string bits_flag, max_bits_flag;
  app.add_flag("--json", s.json, "Emit a machine-readable JSON report");
  app.add_option("--bits", bits_flag, "Initial certification precision in bits (default 128, or DML_BITS)");
  app.add_option("--max-bits", max_bits_flag, "Precision ceiling before reporting indeterminate (default 4096)");

  std::string file;
  auto* height = app.add_subcommand("height", "Weil height of a point, form, coefficient vector or element");
  height->add_option("file", file, "Problem file")->required();
  auto* index_cmd = app.add_subcommand("index", "Index of a multihomogeneous polynomial at a point tuple");
  index_cmd->add_option("file", file, "Problem file")->required();

  auto* roth = app.add_subcommand("roth", "Roth's Lemma instances");
  roth->require_subcommand(1);
  auto* roth_check = roth->add_subcommand("check", "Check hypotheses and conclusion of an instance");
  roth_check->add_option("file", file, "Problem file")->required();

  auto* subspace = app.add_subcommand("subspace", "Subspace-inequality systems");
  subspace->require_subcommand(1);
  auto* subspace_check = subspace->add_subcommand("check", "Validate a system and test points or a box");
  subspace_check->add_option("file", file, "Problem file")->required();

  auto* bounds = app.add_subcommand("bounds", "Certified verification of the counting constants");
  bounds->require_subcommand(1);
  auto* verify = bounds->add_subcommand("verify", "Verify the line-count derivation and the final count");
  std::vector<std::string> deltas;
  bool all = false;
  verify->add_option("file", file, "Optional bounds problem file");
  verify->add_option("--delta", deltas, "delta in (0, 1) as p/q (repeatable)");
  verify->add_flag("--all", all, "delta in {9/10, 1/2, 1/5, 1/9, 1/100} and the final count (default)");

  auto* recur = app.add_subcommand("recur", "Unit equations and recurrence multiplicities");
  recur->require_subcommand(1);
  auto* solve = recur->add_subcommand("solve", "Enumerate solutions in a range");
  std::string c_flag, range_flag;
  std::optional<long> m_flag;
  solve->add_option("file", file, "Problem file")->required();
  solve->add_option("--c", c_flag, "Value c counted in u(m) = c (p/q)");
  solve->add_option("--range", range_flag, "Index range lo:hi");
  solve->add_option("--M", m_flag, "Scan range [-M, M] for unit equations");

  auto argv = join_negative_values(args);
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::InputError);
  }

  std::string command;
  for (auto* sub : {height, index_cmd, roth_check, subspace_check, verify, solve})
    if (sub->parsed()) command = sub == height || sub == index_cmd ? sub->get_name() : sub->get_parent()->get_name() + " " + sub->get_name();

  Json report = header(command);
  ExitCode code = ExitCode::InputError;
  try {
    if (const char* env = std::getenv("DML_BITS"); env && *env) s.bits = parse_bits(env, "DML_BITS");
    if (!bits_flag.empty()) s.bits = parse_bits(bits_flag, "--bits");
    s.max_bits = std::max(s.bits, kDefaultMaxBits);
    if (!max_bits_flag.empty()) s.max_bits = parse_bits(max_bits_flag, "--max-bits");
    if (s.max_bits < s.bits) throw UsageError("--max-bits must not be below --bits");

    if (verify->parsed()) {
      BoundsProblem p;
      if (!file.empty()) {
        auto f = parse_problem_file(file);
        report["source"] = f.source;
        p = expect<BoundsProblem>(f, command);
      }
      for (const auto& d : deltas) {
        Rational q;
        try {
          q = parse_rational(d);
        } catch (const DomainError& e) {
          throw UsageError("--delta: " + std::string(e.what()));
        }
        if (q <= 0 || q >= 1) throw UsageError("--delta must lie in (0, 1), got " + d);
        p.deltas.push_back(q);
      }
      if (!deltas.empty()) p.final_count = true;
      if (all || (file.empty() && deltas.empty())) {
        for (const char* d : {"9/10", "1/2", "1/5", "1/9", "1/100"}) p.deltas.push_back(parse_rational(d));
        p.final_count = true;
      }
      code = bounds_command(p, s, report);
    } else {
      const auto f = parse_problem_file(file);
      report["source"] = f.source;
      if (height->parsed()) {
        code = height_command(expect<HeightProblem>(f, command), s, report);
      } else if (index_cmd->parsed()) {
        code = index_command(expect<IndexProblem>(f, command), report);
      } else if (roth_check->parsed()) {
        code = roth_command(expect<RothProblem>(f, command), s, report);
      } else if (subspace_check->parsed()) {
        code = subspace_command(expect<SubspaceProblem>(f, command), s, report);
      } else {
        RecurOverrides o;
        try {
          if (!c_flag.empty()) o.c = parse_rational(c_flag);
          if (!range_flag.empty()) o.range = parse_range(range_flag);
        } catch (const DomainError& e) {
          throw UsageError(e.what());
        }
        o.m = m_flag;
        code = recurrence_command(expect<RecurrenceProblem>(f, command), o, report);
      }
    }
  } catch (const HypothesisViolation& e) {
    report["error"] = std::string("hypothesis violated: ") + e.what();
    code = finish(report, ExitCode::Negative);
    err << "dml: hypothesis violated: " << e.what() << "\n";
  } catch (const std::exception& e) {
    // ParseError, UsageError, DomainError and UnsupportedError are all input problems.
    report["error"] = e.what();
    code = finish(report, ExitCode::InputError);
    err << "dml: " << e.what() << "\n";
  }

  if (s.json)
    out << report.dump(2) << "\n";
  else if (!report.contains("error") || code == ExitCode::Negative)
    render_table(report, out);
  return static_cast<int>(code);
}

}  // namespace dml::cli
