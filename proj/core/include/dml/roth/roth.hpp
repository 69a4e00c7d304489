#pragma once

#include <span>
#include <vector>

#include "dml/exact/interval.hpp"
#include "dml/heights/heights.hpp"
#include "dml/index/multihomog.hpp"

namespace dml {

struct RatioVerdict {
  int h = 0;  // 1-based, compares r_h with r_{h+1}
  Rational ratio;
  Rational threshold;
  bool ok = false;
};

/// r_h / r_{h+1} >= m^2 (m+1) / theta for 1 <= h < m, exactly.
std::vector<RatioVerdict> check_hypothesis_ratios(int m, std::span<const int> r, const Rational& theta);

/// 7 m (m!)^2 m^m / (2 theta^m).
Rational roth_leading_coefficient(int m, const Rational& theta);

/// Enclosure of roth_leading_coefficient * (sum r_i + log H(P)).
Interval height_condition_threshold(int m, const Rational& theta, std::span<const int> r, const Interval& log_hp);

struct RothInstance {
  int m = 0;
  std::vector<int> r;
  Rational theta;
  MultihomogPolynomial p{std::vector<int>{1}};
  std::vector<BinaryLinearForm> forms;

  /// Throws DomainError if the instance is malformed.
  void validate() const;
};

struct HeightVerdict {
  int h = 0;
  Interval lhs;  // r_h log H(L_h)
  Interval rhs;
  Ordering ordering = Ordering::Overlap;
  bool ok = false;
  bool certain = false;
};

struct RothReport {
  std::vector<RatioVerdict> ratio_verdicts;
  std::vector<HeightVerdict> height_verdicts;
  Interval log_height_p;
  Rational leading_coefficient;
  std::vector<ProjectivePoint> points;
  IndexValue conclusion_index;
  bool conclusion_holds = false;
  bool ratios_hold = false;
  bool heights_hold = false;
  bool indeterminate = false;
  long bits_used = 0;

  bool hypotheses_hold() const { return ratios_hold && heights_hold; }
};

/// Evaluates both hypotheses and the conclusion independently.  Overlapping
/// height comparisons are retried with doubled precision up to max_bits and
/// then reported as indeterminate.
RothReport check_roth_instance(const RothInstance& inst, long bits, long max_bits = 4096);

}  // namespace dml
