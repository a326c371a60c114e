#include "psatz/psd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace psatz {

namespace {

Rational quadratic_form(const QMatrix& q, std::span<const Rational> u) {
  Rational s(0);
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < q.cols(); ++j) {
      if (sgn(u[j]) != 0 && sgn(q(i, j)) != 0) s += u[i] * q(i, j) * u[j];
    }
  }
  return s;
}

}  // namespace

GaussianResult gaussian_decompose(const QMatrix& q) {
  if (!q.is_symmetric()) throw std::invalid_argument("gaussian_decompose needs a symmetric matrix");
  const std::size_t n = q.rows();
  QMatrix m = q;
  SosDecomposition out;
  std::vector<std::optional<std::size_t>> term_of(n);

  for (std::size_t i = 0; i < n; ++i) {
    const int s = sgn(m(i, i));
    std::optional<std::size_t> bad_col;
    if (s == 0) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (sgn(m(i, j)) != 0) {
          bad_col = j;
          break;
        }
      }
      if (!bad_col) continue;
    }
    if (s < 0 || bad_col) {
      // u is orthogonal to every emitted v_k, so u^T Q u equals the value of
      // the remaining form m at u, which is negative by construction.
      RationalVector u(n, Rational(0));
      if (bad_col) {
        u[*bad_col] = 1;
        u[i] = -(m(*bad_col, *bad_col) + 1) / (2 * m(i, *bad_col));
      } else {
        u[i] = 1;
      }
      for (std::size_t k = i; k-- > 0;) {
        if (!term_of[k]) continue;
        const RationalVector& v = out.terms[*term_of[k]].vector;
        Rational acc(0);
        for (std::size_t l = k + 1; l < n; ++l) {
          if (sgn(v[l]) != 0 && sgn(u[l]) != 0) acc += v[l] * u[l];
        }
        u[k] = -acc;
      }
      NotPsd bad{i, std::move(u), Rational(0)};
      bad.value = quadratic_form(q, bad.witness);
      if (sgn(bad.value) >= 0) throw std::logic_error("gaussian_decompose: failed to certify a non-PSD matrix");
      return bad;
    }
    const Rational c = m(i, i);
    RationalVector v(n, Rational(0));
    std::vector<std::size_t> nz;
    for (std::size_t j = i; j < n; ++j) {
      if (sgn(m(i, j)) != 0) {
        v[j] = m(i, j) / c;
        nz.push_back(j);
      }
    }
    for (std::size_t a : nz) {
      for (std::size_t b : nz) m(a, b) -= c * v[a] * v[b];
    }
    term_of[i] = out.terms.size();
    out.terms.push_back({c, std::move(v)});
  }
  return out;
}

bool psd_check_charpoly(const QMatrix& q) {
  if (!q.is_symmetric()) throw std::invalid_argument("psd_check_charpoly needs a symmetric matrix");
  const RationalVector c = charpoly_coefficients(q);
  // Coefficients of p(-lambda): c_k * (-1)^k. No sign variation means no negative root.
  int previous = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    int s = sgn(c[k]);
    if (s == 0) continue;
    if (k % 2 == 1) s = -s;
    if (previous != 0 && s != previous) return false;
    previous = s;
  }
  return true;
}

bool psd_precheck_numeric(const QMatrix& q, const QMatrix& b, double relative_tolerance) {
  if (b.cols() != q.rows()) throw std::invalid_argument("psd_precheck_numeric: B has wrong column count");
  const std::size_t r = b.rows();
  if (r == 0) return true;
  const QMatrix g = b * q * b.transpose();
  std::vector<double> a(r * r);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) a[i * r + j] = to_double(g(i, j));
    max_diag = std::max(max_diag, a[i * r + i]);
  }
  if (max_diag <= 0.0) return false;
  const double tol = relative_tolerance * max_diag;
  // In-place lower Cholesky, pivot by pivot.
  for (std::size_t k = 0; k < r; ++k) {
    double d = a[k * r + k];
    for (std::size_t p = 0; p < k; ++p) d -= a[k * r + p] * a[k * r + p];
    if (!(d > tol)) return false;
    const double l = std::sqrt(d);
    a[k * r + k] = l;
    for (std::size_t i = k + 1; i < r; ++i) {
      double s = a[i * r + k];
      for (std::size_t p = 0; p < k; ++p) s -= a[i * r + p] * a[k * r + p];
      a[i * r + k] = s / l;
    }
  }
  return true;
}

}  // namespace psatz
