#pragma once

#include "psatz/polynomial.hpp"
#include "psatz/problem.hpp"
#include "psatz/sos_decomposition.hpp"

#include <string>
#include <vector>

namespace psatz {

/// One multiplicand of the identity together with its SOS multiplier.
///
/// Labels name what the multiplicand is relative to the problem:
///   "const"        the constant 1 (refutations only)
///   "denominator"  the goal polynomial R (nonnegativity only)
///   "numerator"    the constant -1 (nonnegativity only)
///   "1*3"          the product of assumptions 1 and 3 (1-based); negated
///                  for nonnegativity witnesses
struct WitnessPart {
  std::string label;
  Polynomial polynomial;
  std::vector<Monomial> basis;
  SosDecomposition multiplier;
};

/// Positivstellensatz witness.
///
/// Unsat:  sum_j Q_j * T_j + 1 = 0, where the T_j are assumption products or 1.
/// Nonneg: Q_R * R - Q_0 - sum_j Q_j * T_j = 0 with Q_R not the zero polynomial,
///         i.e. R = (Q_0 + sum_j Q_j T_j) / Q_R.
struct PsatzWitness {
  GoalKind kind = GoalKind::Unsat;
  VariableList vars;
  std::vector<WitnessPart> parts;
};

/// Product of the assumptions named by a subset label such as "1*3".
/// Throws std::invalid_argument for a malformed label or an out-of-range index.
Polynomial subset_product(const ProblemFile& problem, std::string_view label);

/// Label of a subset given by 0-based, strictly increasing indices.
std::string subset_label(std::span<const std::size_t> indices);

/// The multiplicand a part with `label` must carry for `problem`.
Polynomial expected_part_polynomial(const ProblemFile& problem, std::string_view label);

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // first violated condition when rejected
  explicit operator bool() const { return accepted; }
};

/// Exact check of the witness identity against the problem. Uses polynomial
/// arithmetic and SOS expansion only.
VerifyResult verify_witness(const PsatzWitness& w, const ProblemFile& problem);

}  // namespace psatz
