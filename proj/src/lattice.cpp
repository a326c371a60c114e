#include "psatz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psatz {

namespace {

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

void sub_multiple(IntVector& a, const IntVector& b, const Integer& q) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) != 0) a[i] -= q * b[i];
  }
}

Integer exact_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

// Integral LLL (Cohen, Algorithm 2.6.7): all Gram-Schmidt data are kept as
// integers d_k = det Gram(b_1..b_k) and lambda_{k,j} = d_j mu_{k,j}.
IntMatrix lll_reduce(IntMatrix b, const Rational& delta, IntMatrix* transform) {
  if (delta <= Rational(1, 4) || delta > 1) throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1]");
  const std::size_t n = b.size();
  for (const auto& row : b) {
    if (row.size() != b.front().size()) throw std::invalid_argument("lll_reduce: ragged basis");
  }
  IntMatrix h;
  if (transform) {
    h.assign(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) h[i][i] = 1;
  }
  if (n == 0) {
    if (transform) *transform = h;
    return b;
  }
  const Integer p = delta.get_num();
  const Integer q = delta.get_den();

  // 1-based indices as in the reference algorithm; row k is b[k - 1].
  std::vector<Integer> d(n + 1, 0);
  std::vector<IntVector> lam(n + 1, IntVector(n + 1, 0));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (sgn(d[1]) == 0) throw std::invalid_argument("lll_reduce: rows are linearly dependent");

  auto redi = [&](std::size_t k, std::size_t l) {
    if (abs(2 * lam[k][l]) <= d[l]) return;
    Rational ratio(lam[k][l], d[l]);
    ratio.canonicalize();
    const Integer r = round_half_away(ratio);
    sub_multiple(b[k - 1], b[l - 1], r);
    if (transform) sub_multiple(h[k - 1], h[l - 1], r);
    lam[k][l] -= r * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= r * lam[l][i];
  };

  std::size_t kmax = 1;
  auto swapi = [&](std::size_t k) {
    std::swap(b[k - 1], b[k - 2]);
    if (transform) std::swap(h[k - 1], h[k - 2]);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    const Integer l = lam[k][k - 1];
    const Integer bb = exact_div(d[k - 2] * d[k] + l * l, d[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      const Integer t = lam[i][k];
      lam[i][k] = exact_div(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
      lam[i][k - 1] = exact_div(bb * t + l * lam[i][k], d[k]);
    }
    d[k - 1] = bb;
  };

  std::size_t k = 2;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(b[k - 1], b[j - 1]);
        for (std::size_t i = 1; i < j; ++i) u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (sgn(u) == 0) throw std::invalid_argument("lll_reduce: rows are linearly dependent");
        }
      }
    }
    for (;;) {
      redi(k, k - 1);
      const Integer& l = lam[k][k - 1];
      if (q * (d[k] * d[k - 2] + l * l) < p * d[k - 1] * d[k - 1]) {
        swapi(k);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        break;
      }
    }
    for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
    ++k;
  }
  if (transform) *transform = std::move(h);
  return b;
}

KernelCandidates find_kernel_vectors(const Eigen::MatrixXd& g, const QMatrix& bmat, const KernelSearchOptions& options) {
  KernelCandidates out;
  const auto n = static_cast<std::size_t>(g.rows());
  if (n == 0) return out;
  if (bmat.rows() != n) throw std::invalid_argument("find_kernel_vectors: B row count differs from G");
  const double norm = g.norm();
  const double alpha = norm > 0.0 ? options.alpha0 / norm : 1.0;

  IntMatrix rows(n, IntVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      rows[i][n + j] = round_half_away(alpha * g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  const IntMatrix reduced = lll_reduce(std::move(rows));

  double first_l1 = 0.0;
  double first_res = 0.0;
  for (std::size_t r = 0; r < reduced.size(); ++r) {
    IntVector w(reduced[r].begin(), reduced[r].begin() + static_cast<std::ptrdiff_t>(n));
    Eigen::VectorXd wd(n);
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wd(static_cast<Eigen::Index>(i)) = w[i].get_d();
      l1 += std::abs(wd(static_cast<Eigen::Index>(i)));
    }
    const double res = (g * wd).norm();
    if (r == 0) {
      first_l1 = l1;
      first_res = res;
    } else if (!(l1 <= options.beta * first_l1 && res <= options.gamma * first_res)) {
      continue;
    }
    RationalVector v(bmat.cols(), Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(w[i]) == 0) continue;
      for (std::size_t c = 0; c < bmat.cols(); ++c) {
        if (sgn(bmat(i, c)) != 0) v[c] += Rational(w[i]) * bmat(i, c);
      }
    }
    out.v.push_back(std::move(v));
    out.w.push_back(std::move(w));
    out.w_l1.push_back(l1);
    out.residual.push_back(res);
  }
  return out;
}

std::optional<RationalVector> simplify_solution(const SdpSearchSpace& space, std::span<const double> v_float, double mu,
                                                double beta_big) {
  const std::size_t e = space.offset.size();
  const std::size_t n = space.dimension();
  if (v_float.size() != e) throw std::invalid_argument("simplify_solution: entry vector has wrong length");
  const Rational bm = from_double(beta_big * mu);
  const Rational bb = from_double(beta_big);

  IntMatrix rows(n + 1, IntVector(2 * e + n + 1, 0));
  for (std::size_t k = 0; k < e; ++k) {
    rows[0][k] = round_half_away(bm * (space.offset[k] - from_double(v_float[k])));
    rows[0][e + k] = round_half_away(bb * space.offset[k]);
  }
  rows[0][2 * e] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < e; ++k) {
      if (sgn(space.basis[i][k]) == 0) continue;
      rows[i + 1][k] = round_half_away(bm * space.basis[i][k]);
      rows[i + 1][e + k] = round_half_away(bb * space.basis[i][k]);
    }
    rows[i + 1][2 * e + 1 + i] = 1;
  }
  const IntMatrix reduced = lll_reduce(std::move(rows));
  for (const IntVector& row : reduced) {
    const Integer& y0 = row[2 * e];
    if (sgn(y0) == 0) continue;
    RationalVector y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = Rational(row[2 * e + 1 + i], y0);
    for (auto& x : y) x.canonicalize();
    return y;
  }
  return std::nullopt;
}

std::optional<RationalVector> simplify_with_schedule(const SdpSearchSpace& space, std::span<const double> v_float,
                                                     const std::function<bool(const RationalVector&)>& accept,
                                                     const SimplifySchedule& schedule, double beta_big) {
  double mu = schedule.mu0;
  for (int s = 0; s < schedule.steps; ++s, mu *= schedule.factor) {
    auto y = simplify_solution(space, v_float, mu, beta_big);
    if (y && accept(*y)) return y;
  }
  return std::nullopt;
}

}  // namespace psatz
