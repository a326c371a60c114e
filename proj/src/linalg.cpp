#include "psatz/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace psatz {

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Rational> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  QMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

bool QMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) return false;
    }
  }
  return true;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Rational QMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Rational t(0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

void QMatrix::append_row(std::span<const Rational> r) {
  if (r.size() != cols_) throw std::invalid_argument("appended row has wrong length");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
  QMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  QMatrix c(a);
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  QMatrix c(a);
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

RationalVector QMatrix::multiply(std::span<const Rational> x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  RationalVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) y[i] += (*this)(i, j) * x[j];
    }
  }
  return y;
}

Rref rref(QMatrix m) {
  Rref out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    nz.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(r, j)) != 0) {
        m(r, j) *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j : nz) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.echelon = std::move(m);
  return out;
}

std::optional<AffineSpace> solve_affine(const QMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const std::size_t n = a.cols();
  QMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  Rref e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;

  AffineSpace out;
  out.offset.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    is_pivot[e.pivots[k]] = true;
    out.offset[e.pivots[k]] = e.echelon(k, n);
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      if (sgn(e.echelon(k, f)) != 0) v[e.pivots[k]] = -e.echelon(k, f);
    }
    out.basis.push_back(std::move(v));
    out.free_columns.push_back(f);
  }
  return out;
}

QMatrix row_span_basis(std::span<const QMatrix> ms) {
  if (ms.empty()) return QMatrix(0, 0);
  const std::size_t n = ms.front().cols();
  std::vector<RationalVector> basis;
  std::vector<std::size_t> pivot_cols;
  RationalVector work(n);
  for (const QMatrix& m : ms) {
    if (m.cols() != n) throw std::invalid_argument("row_span_basis: column counts differ");
    for (std::size_t i = 0; i < m.rows() && basis.size() < n; ++i) {
      auto row = m.row(i);
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        work[j] = row[j];
        any = any || sgn(work[j]) != 0;
      }
      if (!any) continue;
      // Pivot rows are kept fully reduced, so the order of elimination is irrelevant.
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const Rational f = work[pivot_cols[k]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(basis[k][j]) != 0) work[j] -= f * basis[k][j];
        }
      }
      std::size_t p = 0;
      while (p < n && sgn(work[p]) == 0) ++p;
      if (p == n) continue;
      const Rational inv = 1 / work[p];
      for (std::size_t j = 0; j < n; ++j) work[j] *= inv;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        const Rational f = basis[k][p];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(work[j]) != 0) basis[k][j] -= f * work[j];
        }
      }
      basis.push_back(work);
      pivot_cols.push_back(p);
    }
    if (basis.size() == n) break;
  }
  std::vector<std::size_t> order(basis.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_cols[a] < pivot_cols[b]; });
  QMatrix out(0, n);
  for (std::size_t k : order) out.append_row(basis[k]);
  return out;
}

RationalVector charpoly_coefficients(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly of a non-square matrix");
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  const std::size_t n = m.rows();
  RationalVector c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

Polynomial charpoly(const QMatrix& m) {
  const RationalVector c = charpoly_coefficients(m);
  VariableList vars{"lambda"};
  Polynomial p(vars);
  for (std::size_t k = 0; k < c.size(); ++k) {
    p.add_term(Monomial::unit(1, 0, static_cast<std::uint32_t>(k)), c[k]);
  }
  return p;
}

}  // namespace psatz
