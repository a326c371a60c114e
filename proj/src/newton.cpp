#include "psatz/newton.hpp"

#include "psatz/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace psatz {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

RationalVector difference(std::span<const Rational> a, std::span<const Rational> b) {
  RationalVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Scales so the first nonzero entry has absolute value one; keeps orientation.
RationalVector normalized(RationalVector v) {
  auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (it == v.end()) return v;
  const Rational s = abs(*it);
  for (auto& q : v) q /= s;
  return v;
}

// Calls f on every k-subset of {0..n-1}, in lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

ExponentHull::ExponentHull(std::vector<std::vector<Rational>> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("hull of an empty point set");
  const std::size_t d = points_.front().size();
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  const RationalVector& p0 = points_.front();

  QMatrix dirs(0, d);
  for (std::size_t i = 1; i < points_.size(); ++i) dirs.append_row(difference(points_[i], p0));
  const QMatrix span_rows = dirs.rows() == 0 ? QMatrix(0, d) : row_span_basis(std::span<const QMatrix>(&dirs, 1));
  dimension_ = span_rows.rows();

  // Affine hull: normals orthogonal to every direction.
  {
    QMatrix a = span_rows.rows() == 0 ? QMatrix(1, d) : span_rows;
    RationalVector zero(a.rows(), Rational(0));
    auto ns = solve_affine(a, zero);
    for (const auto& n : ns->basis) equations_.push_back({n, dot(n, p0)});
  }
  if (dimension_ == 0) return;

  const std::size_t k = dimension_;
  std::vector<RationalVector> seen;
  for_each_subset(points_.size(), k, [&](const std::vector<std::size_t>& subset) {
    const RationalVector& s0 = points_[subset[0]];
    // normal = c * span_rows with normal . (s_i - s0) = 0 for the other subset points
    QMatrix e(0, k);
    for (std::size_t i = 1; i < subset.size(); ++i) {
      const RationalVector diff = difference(points_[subset[i]], s0);
      RationalVector row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = dot(span_rows.row(j), diff);
      e.append_row(row);
    }
    if (e.rows() == 0) e = QMatrix(1, k);
    auto ns = solve_affine(e, RationalVector(e.rows(), Rational(0)));
    if (ns->dimension() != 1) return;
    RationalVector normal(d, Rational(0));
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& c = ns->basis[0][j];
      if (sgn(c) == 0) continue;
      for (std::size_t t = 0; t < d; ++t) normal[t] += c * span_rows(j, t);
    }
    bool pos = false;
    bool neg = false;
    for (const auto& p : points_) {
      const int s = sgn(dot(normal, difference(p, s0)));
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (pos && neg) return;
    if (neg) {
      for (auto& q : normal) q = -q;
    }
    normal = normalized(std::move(normal));
    if (std::find(seen.begin(), seen.end(), normal) != seen.end()) return;
    seen.push_back(normal);
    facets_.push_back({normal, dot(normal, s0)});
  });
}

bool ExponentHull::contains(std::span<const Rational> x) const {
  for (const auto& h : equations_) {
    if (dot(h.normal, x) != h.offset) return false;
  }
  for (const auto& h : facets_) {
    if (dot(h.normal, x) < h.offset) return false;
  }
  return true;
}

std::vector<Monomial> newton_halved_monomials(const Polynomial& p, bool homogeneous) {
  if (p.is_zero()) throw std::invalid_argument("Newton polytope of the zero polynomial");
  const std::size_t n = p.num_variables();
  std::vector<RationalVector> pts;
  std::vector<std::uint32_t> lo(n, UINT32_MAX), hi(n, 0);
  for (const auto& [m, c] : p.terms()) {
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = m[i];
      lo[i] = std::min(lo[i], m[i]);
      hi[i] = std::max(hi[i], m[i]);
    }
    pts.push_back(std::move(v));
  }
  const ExponentHull hull(std::move(pts));
  unsigned dlo = (static_cast<unsigned>(p.min_degree()) + 1) / 2;
  unsigned dhi = static_cast<unsigned>(p.degree()) / 2;
  if (homogeneous && p.is_homogeneous()) {
    if (p.degree() % 2 != 0) return {};
    dlo = dhi = static_cast<unsigned>(p.degree()) / 2;
  }

  std::vector<Monomial> out;
  std::vector<std::uint32_t> e(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = (lo[i] + 1) / 2;
    hi[i] = hi[i] / 2;
    e[i] = lo[i];
  }
  RationalVector doubled(n);
  while (true) {
    Monomial m(e);
    const unsigned deg = m.degree();
    if (deg >= dlo && deg <= dhi) {
      for (std::size_t i = 0; i < n; ++i) doubled[i] = 2 * e[i];
      if (hull.contains(doubled)) out.push_back(m);
    }
    std::size_t i = 0;
    while (i < n && e[i] == hi[i]) {
      e[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++e[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace psatz
