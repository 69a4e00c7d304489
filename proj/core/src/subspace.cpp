#include "dml/subspace/subspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "dml/error.hpp"
#include "dml/exact/factor.hpp"
#include "dml/exact/transcendental.hpp"

namespace dml {

ExponentSystem::ExponentSystem(Field field, std::vector<PlaceExponents> entries)
    : field_(field), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const PlaceExponents& e = entries_[i];
    if (!(e.place.field() == field_)) throw DomainError("place " + e.place.name() + " belongs to another field");
    if (e.form1 == e.form2) throw DomainError("duplicate form " + to_string(e.form1) + " at place " + e.place.name());
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_[j].place == e.place) throw DomainError("place " + e.place.name() + " listed twice");
    }
  }
  for (const Place& v : infinite_places(field_)) {
    if (!contains(v)) throw DomainError("S must contain the infinite place " + v.name());
  }
}

bool ExponentSystem::contains(const Place& v) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const PlaceExponents& e) { return e.place == v; });
}

ExponentSystemCheck check_exponent_system(const ExponentSystem& system) {
  ExponentSystemCheck c;
  for (const PlaceExponents& e : system.entries()) {
    c.total += e.e1 + e.e2;
    c.max_partial += std::max({e.e1, e.e2, Rational(0)});
    c.min_partial += std::min({e.e1, e.e2, Rational(0)});
  }
  c.holds = c.total == 0 && c.max_partial <= 1 && c.min_partial >= -1;
  return c;
}

namespace {

// q > base^(s/t)  <=>  q^t > base^s  (q, base > 0, t > 0)
bool exceeds_power(const Rational& q, const Rational& base, const Rational& exponent) {
  const long s = exponent.get_num().get_si();
  const long t = exponent.get_den().get_si();
  return pow(q, t) > pow(base, s);
}

void check_delta(const Rational& delta) {
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1), got " + format_rational(delta));
}

}  // namespace

QueryPrecondition check_query_precondition(const SubspaceQuery& query) {
  check_delta(query.delta);
  QueryPrecondition p;
  p.q_exceeds_4_pow_delta = exceeds_power(query.q, Rational(4), query.delta);
  p.q_exceeds_4_pow_inv_delta = exceeds_power(query.q, Rational(4), 1 / query.delta);
  return p;
}

SystemEvaluator::SystemEvaluator(SubspaceQuery query) : query_(std::move(query)) {
  check_delta(query_.delta);
  if (query_.q <= 1) throw DomainError("Q must exceed 1");
  if (!check_exponent_system(query_.system).holds) throw DomainError("exponent system violates its conditions");
  const Rational n(query_.system.field().degree());
  auto bound = [&](const Place& v, const Rational& e) {
    Rational exponent;
    if (v.is_infinite()) {
      // |s(y)|^(l/n) < Q^(e - delta l/n)  <=>  |s(y)| < Q^(n e / l - delta)
      exponent = n * e / v.local_degree() - query_.delta;
    } else {
      // N(P)^(-ord/n) <= Q^e  <=>  N(P)^(-ord) <= Q^(n e)
      exponent = n * e;
    }
    return Bound{exponent.get_den(), pow(query_.q, exponent.get_num().get_si())};
  };
  for (const PlaceExponents& e : query_.system.entries()) {
    bounds_.emplace_back(bound(e.place, e.e1), bound(e.place, e.e2));
  }
}

bool SystemEvaluator::infinite_ok(const FieldElement& y, const Place& v, const Bound& b) const {
  if (y.is_zero()) return true;
  const unsigned long t = b.t.get_ui();
  switch (v.kind()) {
    case PlaceKind::Complex:
      // |s(y)|^2 = N(y)
      return pow(y.norm(), static_cast<long>(t)) < b.q_pow_s * b.q_pow_s;
    case PlaceKind::Real: {
      if (y.is_rational()) return pow(abs(y.a()), static_cast<long>(t)) < b.q_pow_s;
      const FieldElement yt = pow(y, static_cast<long>(t));
      // |s(y^t)| < c  <=>  c - s(y^t) > 0 and c + s(y^t) > 0
      const FieldElement c(b.q_pow_s);
      return real_sign(c - yt, v.embedding()) > 0 && real_sign(c + yt, v.embedding()) > 0;
    }
    case PlaceKind::Finite:
      break;
  }
  throw DomainError("internal: finite place in infinite check");
}

bool SystemEvaluator::finite_ok(const FieldElement& y, const Place& v, const Bound& b) const {
  if (y.is_zero()) return true;
  const long ord = order_at(y, v);
  const Rational np(v.residue_norm());
  return pow(np, -ord * static_cast<long>(b.t.get_ui())) <= b.q_pow_s;
}

bool SystemEvaluator::integrality_ok(const FieldElement& x1, const FieldElement& x2) const {
  const Field& field = query_.system.field();
  if (query_.integral_inside_s) {
    for (const PlaceExponents& e : query_.system.entries()) {
      const Place& v = e.place;
      if (v.is_infinite()) {
        // Euclidean norm <= 1  <=>  sum |s(x_i)|^2 <= 1
        if (v.kind() == PlaceKind::Complex) {
          if (x1.in(field).norm() + x2.in(field).norm() > 1) return false;
        } else {
          const FieldElement s = x1 * x1 + x2 * x2;
          if (s.is_rational() ? s.a() > 1 : real_sign(FieldElement(1) - s, v.embedding()) < 0) return false;
        }
      } else {
        for (const FieldElement& c : {x1, x2}) {
          if (!c.is_zero() && order_at(c, v) < 0) return false;
        }
      }
    }
    return true;
  }
  // ||x||_v <= 1 at every finite place outside S
  std::set<Integer> primes;
  for (const FieldElement& c : {x1, x2}) {
    if (c.is_zero()) continue;
    if (c.is_rational()) {
      // only denominators can make ord negative
      for (const Integer& p : prime_support(Rational(c.a().get_den()))) primes.insert(p);
    } else {
      for (const Integer& p : relevant_primes(c)) primes.insert(p);
    }
  }
  for (const Integer& p : primes) {
    for (const Place& v : places_above(field, p)) {
      if (query_.system.contains(v)) continue;
      for (const FieldElement& c : {x1, x2}) {
        if (!c.is_zero() && order_at(c.in(field), v) < 0) return false;
      }
    }
  }
  return true;
}

bool SystemEvaluator::satisfies(const FieldElement& x1, const FieldElement& x2) const {
  if (x1.is_zero() && x2.is_zero()) throw DomainError("x must be nonzero");
  const Field& field = query_.system.field();
  const FieldElement a = x1.in(field), b = x2.in(field);
  const auto& entries = query_.system.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const PlaceExponents& e = entries[i];
    const FieldElement y1 = evaluate(e.form1, a, b), y2 = evaluate(e.form2, a, b);
    if (e.place.is_infinite()) {
      if (!infinite_ok(y1, e.place, bounds_[i].first) || !infinite_ok(y2, e.place, bounds_[i].second)) return false;
    } else {
      if (!finite_ok(y1, e.place, bounds_[i].first) || !finite_ok(y2, e.place, bounds_[i].second)) return false;
    }
  }
  return integrality_ok(a, b);
}

bool satisfies_system(std::span<const FieldElement> x, const SubspaceQuery& query) {
  if (x.size() != 2) throw DomainError("x must lie in K^2");
  return SystemEvaluator(query).satisfies(x[0], x[1]);
}

std::vector<LineCluster> cluster_into_lines(std::span<const std::vector<FieldElement>> points) {
  std::vector<LineCluster> out;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& x : points) {
    ProjectivePoint p = ProjectivePoint(x).normalized();
    // canonical coordinates, so string keys identify lines exactly
    auto key = std::make_pair(p[0].to_string(), p[1].to_string());
    auto [it, fresh] = slot.try_emplace(key, out.size());
    if (fresh) out.push_back({std::move(p), 0});
    ++out[it->second].count;
  }
  std::sort(out.begin(), out.end(), [](const LineCluster& a, const LineCluster& b) {
    for (std::size_t i = 0; i < a.representative.size(); ++i) {
      const auto c = lex_compare(a.representative[i], b.representative[i]);
      if (c != 0) return c < 0;
    }
    return false;
  });
  return out;
}

Interval line_count_bound(const Rational& delta, long bits) {
  check_delta(delta);
  const long guard = bits + 40;
  // 2^(22.7) = 2^22 * (2^7)^(1/10)
  const Interval two_pow = Interval(Rational(Integer(1) << 22)) * enclose_root(Rational(128), 10, guard);
  const Interval log_inv = enclose_log(1 / delta, guard);
  return (two_pow * Interval(pow(1 / delta, 3)) * log_inv).rounded(bits);
}

BoxScan scan_box(const SubspaceQuery& query, long bound, unsigned threads) {
  if (bound < 1) throw DomainError("box bound must be positive");
  const SystemEvaluator eval(query);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const long rows = 2 * bound + 1;
  threads = static_cast<unsigned>(std::min<long>(threads, rows));
  struct Part {
    std::size_t examined = 0;
    std::vector<std::vector<FieldElement>> found;
  };
  std::vector<Part> parts(threads);
  auto work = [&](unsigned k) {
    Part& part = parts[k];
    for (long a = -bound + k; a <= bound; a += threads) {
      for (long b = -bound; b <= bound; ++b) {
        if (std::gcd(a, b) != 1) continue;
        ++part.examined;
        if (eval.satisfies(FieldElement(a), FieldElement(b))) part.found.push_back({FieldElement(a), FieldElement(b)});
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work, k);
  work(0);
  pool.clear();

  BoxScan scan;
  for (Part& p : parts) {
    scan.examined += p.examined;
    for (auto& x : p.found) scan.solutions.push_back(std::move(x));
  }
  std::sort(scan.solutions.begin(), scan.solutions.end(), [](const auto& x, const auto& y) {
    const auto c = lex_compare(x[0], y[0]);
    return c != 0 ? c < 0 : lex_compare(x[1], y[1]) < 0;
  });
  scan.lines = cluster_into_lines(scan.solutions);
  return scan;
}

}  // namespace dml
