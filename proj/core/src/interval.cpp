#include "dml/exact/interval.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "dml/error.hpp"

namespace dml {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw DomainError("interval with lo > hi");
}

namespace {

long significant_shift(const Rational& v, long bits) { return v == 0 ? 0 : bits - approx_log2(v) + 1; }

}  // namespace

Interval Interval::rounded(long bits) const {
  Rational lo = lo_ == 0 ? lo_ : snap_down(lo_, significant_shift(lo_, bits));
  Rational hi = hi_ == 0 ? hi_ : snap_up(hi_, significant_shift(hi_, bits));
  return {std::move(lo), std::move(hi)};
}

Interval Interval::rounded_absolute(long bits) const { return {snap_down(lo_, bits), snap_up(hi_, bits)}; }

Interval operator+(const Interval& x, const Interval& y) { return {x.lo_ + y.lo_, x.hi_ + y.hi_}; }
Interval operator-(const Interval& x, const Interval& y) { return {x.lo_ - y.hi_, x.hi_ - y.lo_}; }

Interval operator*(const Interval& x, const Interval& y) {
  if (x.lo_ >= 0 && y.lo_ >= 0) return {x.lo_ * y.lo_, x.hi_ * y.hi_};
  std::array<Rational, 4> p = {x.lo_ * y.lo_, x.lo_ * y.hi_, x.hi_ * y.lo_, x.hi_ * y.hi_};
  auto [mn, mx] = std::minmax_element(p.begin(), p.end());
  return {*mn, *mx};
}

Interval operator/(const Interval& x, const Interval& y) {
  if (y.contains(Rational(0))) throw DomainError("interval division by an interval containing zero");
  return x * Interval(1 / y.hi_, 1 / y.lo_);
}

Interval pow(const Interval& x, unsigned long e, long bits) {
  Interval result(1);
  Interval base = x;
  while (e > 0) {
    if (e & 1) result = (result * base).rounded(bits);
    e >>= 1;
    if (e > 0) base = (base * base).rounded(bits);
  }
  return result;
}

Ordering certified_compare(const Interval& a, const Interval& b) {
  if (a.hi() < b.lo()) return Ordering::Less;
  if (a.lo() > b.hi()) return Ordering::Greater;
  return Ordering::Overlap;
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::Less:
      return "LESS";
    case Ordering::Greater:
      return "GREATER";
    case Ordering::Overlap:
      return "OVERLAP";
  }
  return "?";
}

std::string to_string(const Interval& x) { return "[" + format_rational(x.lo()) + ", " + format_rational(x.hi()) + "]"; }

namespace {

// Decimal digits of q scaled so that `digits` significant digits remain.
struct Scaled {
  Integer mantissa;  // rounded |q| * 10^-exp10
  long exp10;        // q ~ mantissa * 10^exp10
};

long decimal_exponent(const Rational& q) {
  // floor(log10 |q|), exact.
  Rational a = abs(q);
  long e = static_cast<long>(approx_log2(a) * 0.30102999566398120);
  Rational ten(10);
  while (pow(ten, e) > a) --e;
  while (pow(ten, e + 1) <= a) ++e;
  return e;
}

Scaled scale(const Rational& q, int digits, long e10) {
  const long shift = digits - 1 - e10;
  Rational s = abs(q) * pow(Rational(10), shift);
  Integer m = floor(s + Rational(1, 2));
  return {m, -shift};
}

std::string render(const Integer& mantissa, long exp10, bool negative, int digits) {
  std::string ds = mantissa.get_str();
  while (ds.size() > 1 && ds.back() == '0') {
    ds.pop_back();
    ++exp10;
  }
  // mantissa may have rolled over to digits+1 digits.
  long point_exp = exp10 + static_cast<long>(ds.size()) - 1;
  std::string out = negative ? "-" : "";
  if (point_exp >= -4 && point_exp < digits) {
    if (point_exp >= 0) {
      if (static_cast<long>(ds.size()) <= point_exp + 1) {
        out += ds + std::string(static_cast<size_t>(point_exp + 1 - static_cast<long>(ds.size())), '0');
      } else {
        out += ds.substr(0, static_cast<size_t>(point_exp + 1)) + "." + ds.substr(static_cast<size_t>(point_exp + 1));
      }
    } else {
      out += "0." + std::string(static_cast<size_t>(-point_exp - 1), '0') + ds;
    }
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(point_exp);
  }
  return out;
}

}  // namespace

std::string to_decimal(const Rational& q, int digits) {
  if (q == 0) return "0";
  auto s = scale(q, digits, decimal_exponent(q));
  return render(s.mantissa, s.exp10, q < 0, digits);
}

std::string to_decimal(const Interval& x, int digits) {
  const Rational mid = x.midpoint();
  Rational shown = 0;
  std::string body = "0";
  if (mid != 0) {
    auto s = scale(mid, digits, decimal_exponent(mid));
    shown = Rational(s.mantissa) * pow(Rational(10), s.exp10);
    if (mid < 0) shown = -shown;
    body = render(s.mantissa, s.exp10, mid < 0, digits);
  }
  Rational err = std::max<Rational>(x.hi() - shown, shown - x.lo());
  if (err <= 0) return body + " ± 0";
  // two significant digits, rounded up
  long e = decimal_exponent(err);
  Rational unit = pow(Rational(10), e - 1);
  Integer m = ceil(err / unit);
  return body + " ± " + render(m, e - 1, false, 2);
}

}  // namespace dml
