#pragma once

#include <string>

#include "dml/exact/rational.hpp"

namespace dml {

/// Closed interval [lo, hi] with exact rational endpoints.  Arithmetic is
/// exact on the endpoints, so every result encloses the exact real result;
/// `rounded` trades width for endpoint size by rounding outward.
class Interval {
 public:
  Interval() = default;
  Interval(Rational point) : lo_(point), hi_(std::move(point)) {}  // NOLINT(google-explicit-constructor)
  Interval(long point) : lo_(point), hi_(point) {}                 // NOLINT(google-explicit-constructor)
  Interval(int point) : lo_(point), hi_(point) {}                  // NOLINT(google-explicit-constructor)
  /// Throws DomainError if lo > hi.
  Interval(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  bool overlaps(const Interval& other) const { return lo_ <= other.hi_ && other.lo_ <= hi_; }
  bool is_positive() const { return lo_ > 0; }

  /// Outward rounding of both endpoints to `bits` significant bits.
  Interval rounded(long bits) const;
  /// Outward rounding of both endpoints to the grid 2^-bits.
  Interval rounded_absolute(long bits) const;

  Interval operator-() const { return {-hi_, -lo_}; }
  friend Interval operator+(const Interval& x, const Interval& y);
  friend Interval operator-(const Interval& x, const Interval& y);
  friend Interval operator*(const Interval& x, const Interval& y);
  /// Throws DomainError when y contains zero.
  friend Interval operator/(const Interval& x, const Interval& y);
  Interval& operator+=(const Interval& y) { return *this = *this + y; }
  Interval& operator-=(const Interval& y) { return *this = *this - y; }
  Interval& operator*=(const Interval& y) { return *this = *this * y; }
  Interval& operator/=(const Interval& y) { return *this = *this / y; }

  friend bool operator==(const Interval& x, const Interval& y) { return x.lo_ == y.lo_ && x.hi_ == y.hi_; }

 private:
  Rational lo_;
  Rational hi_;
};

using CertifiedInterval = Interval;

/// x^e with outward rounding to `bits` significant bits per step.
Interval pow(const Interval& x, unsigned long e, long bits);

enum class Ordering { Less, Greater, Overlap };

/// Less iff a.hi < b.lo, Greater iff a.lo > b.hi, Overlap otherwise.
Ordering certified_compare(const Interval& a, const Interval& b);

std::string to_string(Ordering o);

/// "[lo, hi]" with exact rational endpoints.
std::string to_string(const Interval& x);

/// Decimal rendering "m ± r" where m has `digits` significant digits and r
/// bounds |m - t| for every t in x (rounded up).
std::string to_decimal(const Interval& x, int digits = 20);

/// Decimal rendering of a rational, rounded to nearest at `digits`
/// significant digits (for human-facing output only).
std::string to_decimal(const Rational& q, int digits = 20);

}  // namespace dml
