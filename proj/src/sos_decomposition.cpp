#include "psatz/sos_decomposition.hpp"

#include <stdexcept>

namespace psatz {

Polynomial expand_sos(const SosDecomposition& sos, std::span<const Monomial> basis, const VariableList& vars) {
  Polynomial total(vars);
  for (const SosTerm& t : sos.terms) {
    if (t.vector.size() != basis.size()) throw std::invalid_argument("vector length does not match basis");
    Polynomial linear(vars);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k].size() != vars.size()) throw VariableMismatch("basis monomial has wrong variable count");
      linear.add_term(basis[k], t.vector[k]);
    }
    total += (linear * linear) * t.coefficient;
  }
  return total;
}

std::vector<Rational> sos_gram(const SosDecomposition& sos, std::size_t n) {
  std::vector<Rational> g(n * n);
  for (const SosTerm& t : sos.terms) {
    if (t.vector.size() != n) throw std::invalid_argument("vector length does not match matrix size");
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(t.vector[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(t.vector[j]) != 0) g[i * n + j] += t.coefficient * t.vector[i] * t.vector[j];
      }
    }
  }
  return g;
}

}  // namespace psatz
