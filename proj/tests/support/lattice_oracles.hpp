#pragma once
// Independent lattice oracles shared by the unit and acceptance tests:
// exact Gram-Schmidt, the LLL conditions, Bareiss determinants and
// Fincke-Pohst enumeration of the shortest vector.

#include "psatz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace psatz::testing {

inline Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exact Gram-Schmidt: mu coefficients and squared norms of b*_i.
inline void gram_schmidt(const IntMatrix& b, std::vector<RationalVector>& mu, RationalVector& norms) {
  const std::size_t n = b.size(), d = b[0].size();
  std::vector<RationalVector> star(n, RationalVector(d));
  mu.assign(n, RationalVector(n));
  norms.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) star[i][k] = b[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      Rational num = 0;
      for (std::size_t k = 0; k < d; ++k) num += Rational(b[i][k]) * star[j][k];
      mu[i][j] = num / norms[j];
      for (std::size_t k = 0; k < d; ++k) star[i][k] -= mu[i][j] * star[j][k];
    }
    for (std::size_t k = 0; k < d; ++k) norms[i] += star[i][k] * star[i][k];
  }
}

inline bool is_lll_reduced(const IntMatrix& b, const Rational& delta) {
  std::vector<RationalVector> mu;
  RationalVector norms;
  gram_schmidt(b, mu, norms);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (abs(mu[i][j]) > Rational(1, 2)) return false;
    if (i > 0 && norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) return false;
  }
  return true;
}

inline Integer det(IntMatrix m) {
  // Bareiss fraction-free elimination.
  const std::size_t n = m.size();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline IntMatrix times(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), IntVector(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Fincke-Pohst enumeration of the squared shortest nonzero vector length,
// working on the input basis only.
inline double brute_force_lambda1_sq(const IntMatrix& b) {
  const std::size_t n = b.size();
  std::vector<RationalVector> mu;
  RationalVector norms;
  gram_schmidt(b, mu, norms);
  std::vector<double> bn(n);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    bn[i] = norms[i].get_d();
    for (std::size_t j = 0; j < i; ++j) m[i][j] = mu[i][j].get_d();
  }
  double best = dot(b[0], b[0]).get_d();
  for (std::size_t i = 1; i < n; ++i) best = std::min(best, dot(b[i], b[i]).get_d());
  std::vector<long> x(n, 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t level, double partial) {
    const std::size_t i = level - 1;
    double c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c -= static_cast<double>(x[j]) * m[j][i];
    const double r = std::sqrt(std::max(0.0, (best - partial) / bn[i])) + 1e-9;
    for (long xi = static_cast<long>(std::ceil(c - r)); xi <= static_cast<long>(std::floor(c + r)); ++xi) {
      x[i] = xi;
      const double p = partial + (xi - c) * (xi - c) * bn[i];
      if (p > best + 1e-9) continue;
      if (i == 0) {
        bool zero = true;
        for (long v : x) zero = zero && v == 0;
        if (zero) continue;
        IntVector v(b[0].size(), 0);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < v.size(); ++l) v[l] += x[k] * b[k][l];
        best = std::min(best, dot(v, v).get_d());
      } else {
        rec(level - 1, p);
      }
    }
    x[i] = 0;
  };
  rec(n, 0.0);
  return best;
}

}  // namespace psatz::testing
