#pragma once

#include "psatz/polynomial.hpp"
#include "psatz/rational.hpp"

#include <span>
#include <vector>

namespace psatz {

/// One weighted square c * (v . basis)^2.
struct SosTerm {
  Rational coefficient;
  RationalVector vector;

  bool operator==(const SosTerm&) const = default;
};

/// Sum of c_i * v_i^T v_i; as a polynomial, sum of c_i * (v_i . basis)^2.
struct SosDecomposition {
  std::vector<SosTerm> terms;

  bool empty() const { return terms.empty(); }
  bool operator==(const SosDecomposition&) const = default;
};

/// The polynomial sum_i c_i * (sum_k v_i[k] * basis[k])^2 over `vars`.
/// Throws std::invalid_argument when a vector length differs from the basis size.
Polynomial expand_sos(const SosDecomposition& sos, std::span<const Monomial> basis, const VariableList& vars);

/// Gram matrix sum_i c_i v_i^T v_i, row-major n x n.
std::vector<Rational> sos_gram(const SosDecomposition& sos, std::size_t n);

}  // namespace psatz
