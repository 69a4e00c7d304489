#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dml/exact/quadratic.hpp"
#include "dml/heights/heights.hpp"
#include "dml/index/multihomog.hpp"
#include "dml/recurrence/recurrence.hpp"
#include "dml/roth/roth.hpp"
#include "dml/subspace/subspace.hpp"

namespace dml::cli {

/// A problem file that could not be read or validated.  line() is 1-based
/// and 0 when no position applies (unreadable file, for instance).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class ProblemKind { Height, Index, Roth, Subspace, Bounds, Recurrence };

std::string to_string(ProblemKind kind);

enum class HeightTarget { Point, Form, Coefficients, Element };

struct HeightProblem {
  HeightTarget target = HeightTarget::Point;
  Field field = Field::rationals();
  std::vector<FieldElement> values;
};

struct IndexProblem {
  MultihomogPolynomial polynomial{std::vector<int>{1}};
  std::vector<ProjectivePoint> points;
  std::vector<BinaryLinearForm> complements;  // empty: default choice
};

struct RothProblem {
  RothInstance instance;
};

struct SubspaceProblem {
  SubspaceQuery query;
  std::vector<std::vector<FieldElement>> points;
  std::optional<long> box;
  unsigned threads = 0;
};

struct BoundsProblem {
  std::vector<Rational> deltas;
  bool final_count = false;
  std::vector<Rational> gap_values;
  std::optional<Rational> gap_e;
};

struct UnitEquationInput {
  UnitEquationProblem problem;
  long range = 0;
};

struct BinaryInput {
  BinaryRecurrence recurrence;
  std::optional<FieldElement> c;
  std::optional<std::pair<long, long>> range;
};

struct TernaryInput {
  TernaryRecurrence recurrence;
  std::optional<std::pair<long, long>> range;
};

using RecurrenceProblem = std::variant<UnitEquationInput, BinaryInput, TernaryInput>;

struct ProblemFile {
  ProblemKind kind = ProblemKind::Height;
  std::string source;
  std::variant<HeightProblem, IndexProblem, RothProblem, SubspaceProblem, BoundsProblem, RecurrenceProblem> body;
};

ProblemFile parse_problem_file(const std::filesystem::path& path);
ProblemFile parse_problem_text(std::string_view text, const std::string& source = "<input>");

/// "lo:hi" with lo <= hi.
std::pair<long, long> parse_range(std::string_view text);

}  // namespace dml::cli
