#pragma once

// Independent index oracle: dehomogenize each block at the point, shift the
// affine coordinate to the point, and read the weighted order off the
// Taylor coefficients.

#include <optional>
#include <random>
#include <vector>

#include "dml/index/multihomog.hpp"

namespace dml::oracle {

inline Integer binomial(long n, long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

inline Rational taylor_index(const MultihomogPolynomial& p, const std::vector<ProjectivePoint>& x) {
  const std::size_t m = p.blocks();
  const auto& r = p.degrees();
  // per block: affine exponent of a monomial and the base point of the chart
  std::vector<bool> chart_x2(m);
  std::vector<FieldElement> t0(m);
  for (std::size_t h = 0; h < m; ++h) {
    chart_x2[h] = !x[h][1].is_zero();
    t0[h] = chart_x2[h] ? x[h][0] * x[h][1].inverse() : FieldElement(0);
  }
  std::optional<Rational> best;
  std::vector<int> k(m, 0);
  for (;;) {
    FieldElement coeff(0);
    for (const auto& [e, c] : p.terms()) {
      FieldElement t = c;
      for (std::size_t h = 0; h < m && !t.is_zero(); ++h) {
        const int deg = chart_x2[h] ? e[h] : r[h] - e[h];
        if (deg < k[h]) {
          t = FieldElement(0);
          break;
        }
        t = t * FieldElement(Rational(binomial(deg, k[h]))) * pow(t0[h], deg - k[h]);
      }
      coeff = coeff + t;
    }
    if (!coeff.is_zero()) {
      Rational w(0);
      for (std::size_t h = 0; h < m; ++h) w += ratio(k[h], r[h]);
      if (!best || w < *best) best = w;
    }
    std::size_t h = 0;
    while (h < m && ++k[h] > r[h]) k[h++] = 0;
    if (h == m) break;
  }
  return *best;
}

struct IndexInstance {
  MultihomogPolynomial p;
  std::vector<ProjectivePoint> points;
};

/// Random sparse P with m <= 3, r_h <= 3, coefficients in {-2..2}, at points
/// drawn from a small set so that vanishing to positive order is common.
inline IndexInstance random_index_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> mdist(1, 3), rdist(1, 3), cdist(-2, 2), pdist(0, 5), keep(0, 2);
  const int m = mdist(rng);
  std::vector<int> r(m);
  for (int& d : r) d = rdist(rng);
  static const int kPoints[6][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
  std::vector<ProjectivePoint> points;
  for (int h = 0; h < m; ++h) {
    const auto& c = kPoints[pdist(rng)];
    points.push_back(ProjectivePoint{c[0], c[1]});
  }
  for (;;) {
    MultihomogPolynomial p(r);
    std::vector<int> e(m, 0);
    for (;;) {
      if (keep(rng) == 0) p.add_term(e, cdist(rng));
      int h = 0;
      while (h < m && ++e[h] > r[h]) e[h++] = 0;
      if (h == m) break;
    }
    if (!p.is_zero()) return {std::move(p), std::move(points)};
  }
}

}  // namespace dml::oracle
