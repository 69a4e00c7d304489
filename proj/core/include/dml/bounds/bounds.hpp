#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dml/exact/interval.hpp"

namespace dml {

/// E = m^2 (m+1) / 240 and F = (7/2) m (m!)^2 (m/480)^m.
struct GapConstants {
  long m = 0;
  Rational e;
  Interval log_f;
  std::optional<Rational> f_exact;  // for m <= kExactGapLimit
};

inline constexpr long kExactGapLimit = 20;

GapConstants gap_constants(long m, long bits);

enum class Relation { Less, LessEqual, Greater, Equal, Info };

std::string to_string(Relation r);

/// One certified comparison lhs (relation) rhs.
struct CheckLine {
  std::string name;
  Relation relation = Relation::Less;
  Interval lhs;
  Interval rhs;
  Ordering ordering = Ordering::Overlap;
  bool certain = false;
  bool holds = false;
  std::string note;
};

CheckLine make_check(std::string name, Interval lhs, Relation relation, Interval rhs, std::string note = {});

/// delta^2 ln Q > 600 m F ln 2.  Exact F for small m, logarithms otherwise.
CheckLine check_q_growth_condition(const Interval& log_q, const Rational& delta, long m, long bits,
                                   long max_bits = 4096);

/// Least number of intervals (q, q^E] covering the sorted values greedily.
std::size_t count_gap_intervals(std::span<const Rational> values, const Rational& e);

/// Interval-count formula m (1 + (4/delta) ln E) + (1 + (4/delta) ln(300 F / delta)).
Interval subspace_count_formula(long m, const Rational& delta, long bits);
Interval subspace_count_formula(const GapConstants& c, const Rational& delta, long bits);

struct BoundReport {
  std::string title;
  Rational delta;
  long m = 0;
  Rational epsilon;
  Rational gamma;
  std::vector<CheckLine> checks;
  long bits_used = 0;
  bool indeterminate = false;

  bool all_hold() const;
};

/// Least m > 28800 / delta^2 and every estimate leading from the
/// interval-count formula to 2^(227/10) delta^-3 ln(1/delta).
BoundReport verify_line_bound_derivation(const Rational& delta, long bits, long max_bits = 4096);

/// 2 (2^7 * 4800 * 36 ln 4 + 1 + 2^(227/10) 6^12 ln 3) < 2^57, with the
/// per-pair line counts for delta = 1/9 alongside.
BoundReport verify_final_count_arithmetic(long bits, long max_bits = 4096);

/// m for a given delta: floor(28800 / delta^2) + 1.
long least_admissible_m(const Rational& delta);

/// 2^(227/10) as an enclosure.
Interval enclose_two_pow_22_7(long bits);

}  // namespace dml
