#pragma once

#include <span>
#include <string>
#include <vector>

#include "dml/exact/interval.hpp"
#include "dml/heights/heights.hpp"
#include "dml/heights/places.hpp"

namespace dml {

struct PlaceExponents {
  Place place;
  FormId form1 = FormId::L1;
  FormId form2 = FormId::L2;
  Rational e1, e2;
};

/// A finite set S of places (all infinite places included), two distinct
/// forms from {L1, L2, L3} per place and their exponents.
class ExponentSystem {
 public:
  ExponentSystem(Field field, std::vector<PlaceExponents> entries);

  const Field& field() const { return field_; }
  const std::vector<PlaceExponents>& entries() const { return entries_; }
  bool contains(const Place& v) const;

 private:
  Field field_;
  std::vector<PlaceExponents> entries_;
};

struct ExponentSystemCheck {
  Rational total;        // sum of all exponents, must be 0
  Rational max_partial;  // sum_v max(e1, e2, 0), must be <= 1
  Rational min_partial;  // sum_v min(e1, e2, 0), must be >= -1
  bool holds = false;
};

ExponentSystemCheck check_exponent_system(const ExponentSystem& system);

struct SubspaceQuery {
  ExponentSystem system;
  Rational q;
  Rational delta;
  /// Require ||x||_v <= 1 for v in S instead of for v outside S.
  bool integral_inside_s = false;
};

struct QueryPrecondition {
  bool q_exceeds_4_pow_delta = false;
  bool q_exceeds_4_pow_inv_delta = false;
};

/// Q > 4^delta (as required) and Q > 4^(1/delta) (informational), exactly.
QueryPrecondition check_query_precondition(const SubspaceQuery& query);

/// Decides the inequality system for x in K^2, x != 0.  Every comparison is
/// exact: both sides are raised to a common integer power.
class SystemEvaluator {
 public:
  explicit SystemEvaluator(SubspaceQuery query);

  bool satisfies(const FieldElement& x1, const FieldElement& x2) const;
  const SubspaceQuery& query() const { return query_; }

 private:
  struct Bound {
    // value^t compared with q^s
    Integer t;
    Rational q_pow_s;
  };
  bool infinite_ok(const FieldElement& y, const Place& v, const Bound& b) const;
  bool finite_ok(const FieldElement& y, const Place& v, const Bound& b) const;
  bool integrality_ok(const FieldElement& x1, const FieldElement& x2) const;

  SubspaceQuery query_;
  std::vector<std::pair<Bound, Bound>> bounds_;
};

bool satisfies_system(std::span<const FieldElement> x, const SubspaceQuery& query);

struct LineCluster {
  ProjectivePoint representative;  // first nonzero coordinate 1
  std::size_t count = 0;
};

/// Groups nonzero vectors by the line through them; sorted by representative.
std::vector<LineCluster> cluster_into_lines(std::span<const std::vector<FieldElement>> points);

/// 2^(227/10) delta^-3 ln(1/delta).
Interval line_count_bound(const Rational& delta, long bits);

struct BoxScan {
  std::size_t examined = 0;
  std::vector<std::vector<FieldElement>> solutions;
  std::vector<LineCluster> lines;
};

/// All integer points with coprime coordinates in [-bound, bound]^2 that
/// satisfy the system, split across `threads` workers.
BoxScan scan_box(const SubspaceQuery& query, long bound, unsigned threads = 0);

}  // namespace dml
