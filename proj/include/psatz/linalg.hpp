#pragma once

#include "psatz/polynomial.hpp"
#include "psatz/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace psatz {

/// Dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Rational> d);
  static QMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  QMatrix transpose() const;
  Rational trace() const;

  /// Appends one row; the row length must equal cols().
  void append_row(std::span<const Rational> r);

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  bool operator==(const QMatrix&) const = default;

  RationalVector multiply(std::span<const Rational> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Rref {
  QMatrix echelon;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
Rref rref(QMatrix m);

/// Exact parametrization {offset + sum t_i basis_i} of the solutions of A x = b.
/// `free_columns[i]` is the unknown that basis vector i sets to one; every
/// other free unknown is zero in that vector.
struct AffineSpace {
  RationalVector offset;
  std::vector<RationalVector> basis;
  std::vector<std::size_t> free_columns;
  std::size_t dimension() const { return basis.size(); }
};

/// Solves A x = b; std::nullopt means the system is inconsistent.
std::optional<AffineSpace> solve_affine(const QMatrix& a, std::span<const Rational> b);

/// Full-row-rank matrix whose rows span the union of the row spaces of `ms`.
/// Returns a 0 x n matrix when every input is zero.
QMatrix row_span_basis(std::span<const QMatrix> ms);

/// Characteristic polynomial det(lambda I - m) in the single variable "lambda".
Polynomial charpoly(const QMatrix& m);

/// Coefficients c_0..c_n of det(lambda I - m) = sum c_k lambda^k.
RationalVector charpoly_coefficients(const QMatrix& m);

}  // namespace psatz
