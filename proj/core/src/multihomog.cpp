#include "dml/index/multihomog.hpp"

#include <algorithm>
#include <optional>

#include "dml/error.hpp"

namespace dml {

MultihomogPolynomial::MultihomogPolynomial(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  if (degrees_.empty()) throw DomainError("a multihomogeneous polynomial needs at least one block");
  for (int r : degrees_) {
    if (r < 1) throw DomainError("block degrees must be positive");
  }
}

MultihomogPolynomial::MultihomogPolynomial(std::vector<int> degrees,
                                           const std::vector<std::pair<BlockExponents, FieldElement>>& terms)
    : MultihomogPolynomial(std::move(degrees)) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

void MultihomogPolynomial::add_term(const BlockExponents& exponents, const FieldElement& c) {
  if (exponents.size() != degrees_.size()) {
    throw DomainError("monomial has " + std::to_string(exponents.size()) + " blocks, polynomial has " +
                      std::to_string(degrees_.size()));
  }
  for (std::size_t h = 0; h < exponents.size(); ++h) {
    if (exponents[h] < 0 || exponents[h] > degrees_[h]) {
      throw DomainError("exponent " + std::to_string(exponents[h]) + " out of range in block " +
                        std::to_string(h + 1));
    }
  }
  if (c.is_zero()) return;
  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    terms_.emplace(exponents, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

Field MultihomogPolynomial::field() const {
  Field f = Field::rationals();
  for (const auto& [e, c] : terms_) f = common_field(f, c.field());
  return f;
}

std::vector<FieldElement> MultihomogPolynomial::coefficients() const {
  std::vector<FieldElement> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(c);
  return out;
}

FieldElement MultihomogPolynomial::evaluate(std::span<const ProjectivePoint> points) const {
  if (points.size() != blocks()) throw DomainError("point tuple length does not match the block count");
  for (const ProjectivePoint& x : points) {
    if (x.size() != 2) throw DomainError("each block takes a point of K^2");
  }
  FieldElement sum(0);
  for (const auto& [e, c] : terms_) {
    FieldElement t = c;
    for (std::size_t h = 0; h < e.size(); ++h) {
      t = t * pow(points[h][0], e[h]) * pow(points[h][1], degrees_[h] - e[h]);
    }
    sum = sum + t;
  }
  return sum;
}

MultihomogPolynomial MultihomogPolynomial::scaled(const FieldElement& c) const {
  MultihomogPolynomial out(degrees_);
  for (const auto& [e, a] : terms_) out.add_term(e, a * c);
  return out;
}

std::string MultihomogPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (std::size_t h = 0; h < e.size(); ++h) {
      const std::string b = std::to_string(h + 1);
      if (e[h] > 0) out += "*x" + b + "1^" + std::to_string(e[h]);
      if (degrees_[h] - e[h] > 0) out += "*x" + b + "2^" + std::to_string(degrees_[h] - e[h]);
    }
  }
  return out;
}

ProjectivePoint vanishing_point(const BinaryLinearForm& form) { return ProjectivePoint{form.c2(), -form.c1()}; }

namespace {

Rational magnitude(const FieldElement& x) {
  if (x.field().is_rational()) return abs(x.a());
  return abs(x.norm());
}

// coefficient of M^j N^(r-j) in x1^i x2^(r-i), for j = 0..r
using Expansion = std::vector<std::vector<FieldElement>>;

std::vector<FieldElement> multiply(const std::vector<FieldElement>& f, const std::vector<FieldElement>& g) {
  std::vector<FieldElement> out(f.size() + g.size() - 1, FieldElement(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = out[i + j] + f[i] * g[j];
  }
  return out;
}

Expansion expansion_table(int r, const BinaryLinearForm& m, const BinaryLinearForm& n) {
  // M = m1 x1 + m2 x2, N = n1 x1 + n2 x2 ->  x1 = (n2 M - m2 N)/D, x2 = (-n1 M + m1 N)/D
  const FieldElement det = m.c1() * n.c2() - m.c2() * n.c1();
  if (det.is_zero()) throw DomainError("complementary form is proportional to the vanishing form");
  const FieldElement inv = det.inverse();
  // polynomials in M with the N-degree implied: entry j is the M^j coefficient
  const std::vector<FieldElement> x1 = {-m.c2() * inv, n.c2() * inv};
  const std::vector<FieldElement> x2 = {m.c1() * inv, -n.c1() * inv};
  std::vector<std::vector<FieldElement>> p1(r + 1), p2(r + 1);
  p1[0] = p2[0] = {FieldElement(1)};
  for (int k = 1; k <= r; ++k) {
    p1[k] = multiply(p1[k - 1], x1);
    p2[k] = multiply(p2[k - 1], x2);
  }
  Expansion table(r + 1);
  for (int i = 0; i <= r; ++i) table[i] = multiply(p1[i], p2[r - i]);
  return table;
}

}  // namespace

BinaryLinearForm default_complement(const ProjectivePoint& x) {
  if (x.size() != 2) throw DomainError("each block takes a point of K^2");
  if (magnitude(x[0]) >= magnitude(x[1])) return {1, 0};
  return {0, 1};
}

IndexValue index(const MultihomogPolynomial& p, std::span<const ProjectivePoint> points,
                 std::span<const BinaryLinearForm> complements) {
  if (p.is_zero()) throw DomainError("index of the zero polynomial");
  if (points.size() != p.blocks()) {
    throw DomainError("point tuple has length " + std::to_string(points.size()) + ", expected " +
                      std::to_string(p.blocks()));
  }
  if (complements.size() != p.blocks()) throw DomainError("one complementary form per block is required");

  std::map<BlockExponents, FieldElement> current = p.terms();
  for (std::size_t h = 0; h < p.blocks(); ++h) {
    const ProjectivePoint& x = points[h];
    if (x.size() != 2) throw DomainError("each block takes a point of K^2");
    const BinaryLinearForm m(x[1], -x[0]);
    if (complements[h](x[0], x[1]).is_zero()) throw DomainError("complementary form vanishes at the point");
    const Expansion table = expansion_table(p.degrees()[h], m, complements[h]);
    std::map<BlockExponents, FieldElement> next;
    for (const auto& [e, c] : current) {
      const auto& row = table[e[h]];
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j].is_zero()) continue;
        BlockExponents k = e;
        k[h] = static_cast<int>(j);
        auto [it, fresh] = next.try_emplace(k, FieldElement(0));
        it->second = it->second + c * row[j];
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
    current = std::move(next);
  }

  std::optional<Rational> best;
  for (const auto& [e, c] : current) {
    Rational w(0);
    for (std::size_t h = 0; h < e.size(); ++h) w += ratio(e[h], p.degrees()[h]);
    if (!best || w < *best) best = w;
  }
  if (!best) throw DomainError("internal: basis change annihilated a nonzero polynomial");
  return *best;
}

IndexValue index(const MultihomogPolynomial& p, std::span<const ProjectivePoint> points) {
  std::vector<BinaryLinearForm> complements;
  for (const ProjectivePoint& x : points) complements.push_back(default_complement(x));
  if (points.size() != p.blocks()) {
    throw DomainError("point tuple has length " + std::to_string(points.size()) + ", expected " +
                      std::to_string(p.blocks()));
  }
  return index(p, points, complements);
}

IndexValue index_wrt_forms(const MultihomogPolynomial& p, std::span<const BinaryLinearForm> forms) {
  std::vector<ProjectivePoint> points;
  for (const BinaryLinearForm& l : forms) points.push_back(vanishing_point(l));
  return index(p, points);
}

}  // namespace dml
