#pragma once

#include "psatz/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psatz {

using VariableList = std::vector<std::string>;

/// Exponent vector x1^a1 ... xn^an over a fixed variable list.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exponents_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents) : exponents_(std::move(exponents)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, std::uint32_t power = 1);

  std::size_t size() const { return exponents_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exponents_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exponents_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exponents_; }

  std::uint32_t degree() const;

  Monomial operator*(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

  /// Graded lexicographic: total degree first, then the first differing
  /// exponent in declared variable order decides (larger exponent is larger).
  std::strong_ordering operator<=>(const Monomial& other) const;

  /// Text form over `vars`, e.g. `x1^2*x3`; the empty monomial prints as `1`.
  std::string to_string(const VariableList& vars) const;

 private:
  std::vector<std::uint32_t> exponents_;
};

class VariableMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse polynomial with exact rational coefficients. No zero coefficient is
/// ever stored, so the zero polynomial has no terms and equality is structural.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(VariableList vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VariableList vars, const Rational& c);
  static Polynomial variable(VariableList vars, std::size_t index);
  static Polynomial term(VariableList vars, const Monomial& m, const Rational& c);

  /// Parses the text syntax, e.g. `x1^6 + x2^4*x3^2 - 3*x1^2*x2^2*x3^2`.
  /// Unknown identifiers raise std::invalid_argument("undeclared variable ...").
  static Polynomial parse(std::string_view text, const VariableList& vars);

  const VariableList& variables() const { return vars_; }
  std::size_t num_variables() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int min_degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;

  /// Adds c*m in place, keeping the canonical form.
  void add_term(const Monomial& m, const Rational& c);

  Rational evaluate(std::span<const Rational> point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }

  bool operator==(const Polynomial& other) const = default;

  /// Terms in decreasing graded-lex order.
  std::string to_string() const;

 private:
  void require_same_variables(const Polynomial& other) const;

  VariableList vars_;
  TermMap terms_;
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Rational evaluate(const Polynomial& p, std::span<const Rational> point);

/// All monomials in `nvars` variables with total degree in [lo, hi], increasing grlex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned lo, unsigned hi);

}  // namespace psatz
