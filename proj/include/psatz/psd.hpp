#pragma once

#include "psatz/linalg.hpp"
#include "psatz/sos_decomposition.hpp"

#include <variant>

namespace psatz {

/// Evidence that a symmetric matrix is not positive semidefinite:
/// `witness`^T Q `witness` == `value` < 0.
struct NotPsd {
  std::size_t index = 0;  // pivot at which the reduction failed
  RationalVector witness;
  Rational value;
};

using GaussianResult = std::variant<SosDecomposition, NotPsd>;

/// Gaussian reduction of a symmetric rational matrix into sum c_i v_i^T v_i
/// with c_i > 0. Fails on a negative pivot, or on a zero pivot whose row is
/// not zero.
GaussianResult gaussian_decompose(const QMatrix& q);

/// PSD test by Descartes' rule of signs on charpoly(-lambda). Exact because a
/// symmetric matrix has only real eigenvalues.
bool psd_check_charpoly(const QMatrix& q);

/// Floating-point Cholesky of B Q B^T. True when every pivot exceeds
/// `relative_tolerance` times the largest diagonal entry. Advisory only.
bool psd_precheck_numeric(const QMatrix& q, const QMatrix& b, double relative_tolerance = 1e-10);

}  // namespace psatz
