#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dml/cli/problem.hpp"
#include "dml/cli/report.hpp"
#include "dml/cli/run.hpp"
#include "dml/exact/transcendental.hpp"
#include "roth_family.hpp"

using namespace dml;
using namespace dml::cli;

namespace {

const std::string kData = DML_TEST_DATA_DIR;

struct Result {
  int code = 0;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(std::vector<std::string> args, int expected = 0) {
  args.insert(args.begin(), "--json");
  const auto r = invoke(args);
  CHECK(r.code == expected);
  return Json::parse(r.out);
}

std::string data(const std::string& name) { return kData + "/" + name; }

/// Raises a ParseError from problem text and returns it.
ParseError parse_failure(const std::string& text) {
  try {
    parse_problem_text(text, "t.problem");
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError("", 0, "", "");
}

}  // namespace

TEST_CASE("problem files parse into the declared kind") {
  const auto h = parse_problem_text("kind: height\npoint: [\"3\", \"4\"]\n");
  CHECK(h.kind == ProblemKind::Height);
  const auto& hp = std::get<HeightProblem>(h.body);
  CHECK(hp.field == Field::rationals());
  CHECK(hp.values == std::vector<FieldElement>{3, 4});

  const auto u = parse_problem_file(data("unit_equation.problem"));
  REQUIRE(u.kind == ProblemKind::Recurrence);
  const auto& rec = std::get<RecurrenceProblem>(u.body);
  const auto& ue = std::get<UnitEquationInput>(rec);
  CHECK(ue.problem.a == 1);
  CHECK(ue.problem.b == -1);
  CHECK(ue.problem.alpha == 2);
  CHECK(ue.problem.beta == 3);
  CHECK(ue.range == 100);

  const auto e = parse_problem_text("kind: height\nelement: {a: \"3\", b: \"2\", d: -1}\n");
  const auto& ep = std::get<HeightProblem>(e.body);
  CHECK(ep.target == HeightTarget::Element);
  CHECK(ep.values[0] == FieldElement(3, 2, Field::quadratic(-1)));

  const auto s = parse_problem_file(data("subspace.problem"));
  const auto& sp = std::get<SubspaceProblem>(s.body);
  CHECK(sp.query.q == 100);
  CHECK(sp.points.size() == 3);
  CHECK(sp.query.system.entries().size() == 1);

  const auto i = parse_problem_file(data("index.problem"));
  CHECK(std::get<IndexProblem>(i.body).polynomial.terms().size() == 2);
}

TEST_CASE("parse errors name the line and the field") {
  auto zero = parse_failure("kind: height\npoint: [\"3\", \"4/0\"]\n");
  CHECK(zero.line() == 2);
  CHECK(zero.field() == "point[1]");

  auto unknown = parse_failure("kind: height\npoint: [\"3\", \"4\"]\ncolour: blue\n");
  CHECK(unknown.line() == 3);
  CHECK(unknown.field() == "colour");

  auto kind = parse_failure("kind: teapot\n");
  CHECK(kind.field() == "kind");
  CHECK(kind.line() == 1);

  auto missing = parse_failure("kind: recurrence\na: \"1\"\nb: \"-1\"\nalpha: \"2\"\nbeta: \"3\"\n");
  CHECK(missing.field() == "M");

  auto nested = parse_failure(
      "kind: subspace\nQ: \"100\"\ndelta: \"1/10\"\nplaces:\n  - place: inf\n    forms: [L1, L2]\n"
      "    exponents: [\"1/2\", \"x\"]\npoints: [[\"1\", \"0\"]]\n");
  CHECK(nested.field() == "places[0].exponents[1]");
  CHECK(nested.line() == 7);

  CHECK(parse_failure("kind: height\nkind: height\npoint: [1, 2]\n").field() == "kind");
  CHECK(parse_failure("kind: height\npoint: [1, {a: 1, b: 1, d: 4}]\n").field() == "point[1].d");
  CHECK(parse_failure("kind: index\ndegrees: [1]\nterms:\n  - exponents: [[1, 1]]\n    coefficient: 1\npoints: [[1, 0]]\n")
            .field() == "terms[0].exponents[0]");
  CHECK(parse_failure("kind: height\npoint: [1, 2]\n---\nkind: height\npoint: [1, 2]\n").line() == 0);
  CHECK_THROWS_AS(parse_problem_file(data("no_such.problem")), ParseError);
}

TEST_CASE("ranges") {
  CHECK(parse_range("-10:10") == std::pair{-10L, 10L});
  CHECK(parse_range("3:3") == std::pair{3L, 3L});
  CHECK_THROWS(parse_range("5:1"));
  CHECK_THROWS(parse_range("5"));
  CHECK_THROWS(parse_range("a:b"));
}

TEST_CASE("height command") {
  const auto j = invoke_json({"height", data("height_point.problem")});
  CHECK(j["schema"] == kSchema);
  CHECK(j["exact_value"] == "5");
  CHECK(j["height"]["lo"] == "5");
  CHECK(j["height"]["hi"] == "5");
  CHECK(j["status"] == "verified");

  const auto pf = invoke_json({"height", data("element.problem")});
  CHECK(pf["product_formula_holds"] == true);
  CHECK(pf["places"].size() == 3);
}

TEST_CASE("recurrence command") {
  const auto fib = invoke_json({"recur", "solve", data("fib.problem"), "--c", "1", "--range", "-10:10"});
  CHECK(fib["solutions"] == Json::array({-1, 1, 2}));
  CHECK(fib["count"] == 3);
  CHECK(fib["bound"]["within"] == true);

  const auto zero = invoke_json({"recur", "solve", data("fib.problem"), "--range=-30:30"});
  CHECK(zero["solutions"] == Json::array({0}));

  const auto unit = invoke_json({"recur", "solve", data("unit_equation.problem")});
  CHECK(unit["solutions"] == Json::array({1}));
  CHECK(unit["complete"] == true);
  CHECK(unit["bound"]["bound"] == "144115188075855872");

  const auto ternary = invoke_json({"recur", "solve", data("ternary.problem")});
  CHECK(ternary["solutions"] == Json::array({0}));
  CHECK(ternary["notes"].size() == 1);

  const auto roots = invoke_json({"recur", "solve", data("roots_of_unity.problem")}, 1);
  CHECK(roots["status"] == "negative");
  CHECK(invoke({"recur", "solve", data("fib.problem"), "--M", "5"}).code == 2);
  CHECK(invoke({"recur", "solve", data("fib.problem"), "--range", "4:1"}).code == 2);
}

TEST_CASE("exit codes") {
  CHECK(invoke({"roth", "check", "missing.problem"}).code == 2);
  CHECK(invoke({"height", data("bad_denominator.problem")}).code == 2);
  CHECK(invoke({"height", data("unknown_key.problem")}).code == 2);
  CHECK(invoke({"height", data("fib.problem")}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"--bits", "x", "height", data("height_point.problem")}).code == 2);
  CHECK(invoke({"bounds", "verify", "--delta", "1/9"}).code == 0);
  CHECK(invoke({"bounds", "verify", "--delta", "9/10"}).code == 1);
  CHECK(invoke({"bounds", "verify", "--delta", "3/2"}).code == 2);
  CHECK(invoke({"roth", "check", data("roth.problem")}).code == 1);
  CHECK(invoke({"subspace", "check", data("subspace.problem")}).code == 0);
  CHECK(invoke({"index", data("index.problem")}).code == 0);
}

TEST_CASE("precision ceiling gives exit code 3") {
  std::mt19937_64 rng(1);
  RothInstance inst = oracle::feasible_instance(rng);
  const Interval logp = exact_height(inst.p.coefficients()).log(2048);
  const Interval rhs = height_condition_threshold(2, inst.theta, inst.r, logp);
  const Integer n1 = oracle::ceil_exp(52);
  const Integer n2 = ceil(enclose_exp(rhs.hi(), 2048).hi());
  std::ostringstream text;
  text << "kind: roth\ntheta: \"19/10\"\ndegrees: [7, 1]\nterms:\n";
  for (const auto& [e, c] : inst.p.terms())
    text << "  - exponents: [[" << e[0] << ", " << 7 - e[0] << "], [" << e[1] << ", " << 1 - e[1] << "]]\n"
         << "    coefficient: \"" << c.to_string() << "\"\n";
  text << "forms: [[\"1\", \"-" << n1.get_str() << "\"], [\"1\", \"-" << n2.get_str() << "\"]]\n";
  const auto path = std::filesystem::temp_directory_path() / "dml_near_tie.problem";
  std::ofstream(path) << text.str();

  const auto capped = invoke_json({"--bits", "64", "--max-bits", "256", "roth", "check", path.string()}, 3);
  CHECK(capped["status"] == "indeterminate");
  CHECK(capped["indeterminate"] == true);
  const auto full = invoke_json({"--bits", "64", "roth", "check", path.string()}, 0);
  CHECK(full["heights_hold"] == true);
  std::filesystem::remove(path);
}

TEST_CASE("DML_BITS sets the default precision") {
  ::setenv("DML_BITS", "200", 1);
  const auto j = invoke_json({"height", data("height_point.problem")});
  ::unsetenv("DML_BITS");
  CHECK(j["bits"] == 200);
  CHECK(invoke_json({"--bits", "96", "height", data("height_point.problem")})["bits"] == 96);
}

TEST_CASE("json output round-trips, is deterministic, and agrees with the table") {
  const std::vector<std::vector<std::string>> commands = {
      {"height", data("height_sqrt2.problem")},
      {"height", data("element.problem")},
      {"index", data("index.problem")},
      {"roth", "check", data("roth.problem")},
      {"subspace", "check", data("subspace.problem")},
      {"bounds", "verify", "--delta", "1/9"},
      {"recur", "solve", data("unit_equation.problem")},
      {"recur", "solve", data("ternary.problem")},
  };
  for (const auto& c : commands) {
    auto with_json = c;
    with_json.insert(with_json.begin(), "--json");
    const auto first = invoke(with_json);
    const auto second = invoke(with_json);
    CHECK(first.out == second.out);
    const Json j = Json::parse(first.out);
    CHECK(j.dump(2) + "\n" == first.out);
    CHECK(j["schema"] == kSchema);

    const auto table = invoke(c);
    CHECK(table.code == first.code);
    std::ostringstream rendered;
    render_table(j, rendered);
    CHECK(rendered.str() == table.out);
    for (const auto& [key, value] : j.items()) {
      if (!value.is_string() && !value.is_number()) continue;
      const std::string shown = value.is_string() ? value.get<std::string>() : value.dump();
      CHECK_MESSAGE(table.out.find(key) != std::string::npos, key);
      CHECK_MESSAGE(table.out.find(shown) != std::string::npos, key);
    }
  }
}

TEST_CASE("table cells") {
  Json j{{"x", to_json(FieldElement(1, 2, Field::quadratic(3)))},
         {"i", to_json(Interval(Rational(1), Rational(1)))},
         {"rows", Json::array({Json{{"a", 1}, {"b", true}}, Json{{"a", 2}, {"c", nullptr}}})}};
  std::ostringstream out;
  render_table(j, out);
  const auto s = out.str();
  CHECK(s.find("1+2*sqrt(3)") != std::string::npos);
  CHECK(s.find("1 ± 0") != std::string::npos);
  CHECK(s.find("yes") != std::string::npos);
  CHECK(s.find("none") != std::string::npos);
}
