#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dml/exact/quadratic.hpp"
#include "dml/heights/heights.hpp"

namespace dml {

/// Exponent of x_{h1} in each block h; the exponent of x_{h2} is r_h minus it.
using BlockExponents = std::vector<int>;

/// Polynomial in m blocks (x_{h1}, x_{h2}), homogeneous of degree r_h in
/// block h.  Sparse: only nonzero coefficients are stored.
class MultihomogPolynomial {
 public:
  explicit MultihomogPolynomial(std::vector<int> degrees);
  MultihomogPolynomial(std::vector<int> degrees, const std::vector<std::pair<BlockExponents, FieldElement>>& terms);

  /// Adds c to the coefficient of the monomial; throws on a bad exponent.
  void add_term(const BlockExponents& exponents, const FieldElement& c);

  std::size_t blocks() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::map<BlockExponents, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Field field() const;
  std::vector<FieldElement> coefficients() const;

  /// P at a tuple of points of K^2 (one per block).
  FieldElement evaluate(std::span<const ProjectivePoint> points) const;
  MultihomogPolynomial scaled(const FieldElement& c) const;
  std::string to_string() const;

 private:
  std::vector<int> degrees_;
  std::map<BlockExponents, FieldElement> terms_;
};

using IndexValue = Rational;

/// The point (c2, -c1) where c1*x1 + c2*x2 vanishes.
ProjectivePoint vanishing_point(const BinaryLinearForm& form);

/// Coordinate form x1 or x2 with the larger |value| at x (ties go to x1).
BinaryLinearForm default_complement(const ProjectivePoint& x);

/// i_{x,r}(P): rewrite P in the bases (M_h, N_h), M_h vanishing at x_h,
/// and return the least sum_h j_h / r_h over monomials M^j N^(r-j).
IndexValue index(const MultihomogPolynomial& p, std::span<const ProjectivePoint> points);

/// The same with explicitly chosen complementary forms (N_h(x_h) != 0).
IndexValue index(const MultihomogPolynomial& p, std::span<const ProjectivePoint> points,
                 std::span<const BinaryLinearForm> complements);

IndexValue index_wrt_forms(const MultihomogPolynomial& p, std::span<const BinaryLinearForm> forms);

}  // namespace dml
