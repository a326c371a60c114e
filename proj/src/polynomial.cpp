#include "psatz/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace psatz {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::unit(std::size_t nvars, std::size_t var, std::uint32_t power) {
  Monomial m(nvars);
  m.exponents_.at(var) = power;
  return m;
}

std::uint32_t Monomial::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), std::uint32_t{0});
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.size() != size()) throw VariableMismatch("monomial length mismatch");
  Monomial out(*this);
  for (std::size_t i = 0; i < size(); ++i) out.exponents_[i] += other.exponents_[i];
  return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  return exponents_ <=> other.exponents_;
}

std::string Monomial::to_string(const VariableList& vars) const {
  std::string out;
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars.at(i);
    if (exponents_[i] > 1) out += '^' + std::to_string(exponents_[i]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(VariableList vars, const Rational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial(p.num_variables()), c);
  return p;
}

Polynomial Polynomial::variable(VariableList vars, std::size_t index) {
  Polynomial p(std::move(vars));
  p.add_term(Monomial::unit(p.num_variables(), index), Rational(1));
  return p;
}

Polynomial Polynomial::term(VariableList vars, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(vars));
  if (m.size() != p.num_variables()) throw VariableMismatch("monomial length does not match variable count");
  p.add_term(m, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

int Polynomial::min_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous() const { return degree() == min_degree(); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw VariableMismatch("evaluation point has wrong length");
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::uint32_t k = 0; k < m[i]; ++k) v *= point[i];
    }
    total += v;
  }
  return total;
}

void Polynomial::require_same_variables(const Polynomial& other) const {
  if (vars_ != other.vars_) throw VariableMismatch("polynomials use different variable lists");
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_variables(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_variables(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_variables(b);
  Polynomial out(a.vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    const bool is_const = m.degree() == 0;
    if (is_const) {
      out += psatz::to_string(mag);
    } else if (mag == 1) {
      out += m.to_string(vars_);
    } else {
      out += psatz::to_string(mag) + "*" + m.to_string(vars_);
    }
  }
  return out;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial multiply(const Polynomial& a, const Polynomial& b) { return a * b; }
Rational evaluate(const Polynomial& p, std::span<const Rational> point) { return p.evaluate(point); }

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned lo, unsigned hi) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (lo == 0) out.emplace_back(0);
    return out;
  }
  // Enumerate exponent vectors with bounded total degree by odometer.
  std::vector<std::uint32_t> e(nvars, 0);
  while (true) {
    const unsigned d = std::accumulate(e.begin(), e.end(), 0u);
    if (d >= lo && d <= hi) out.emplace_back(e);
    std::size_t i = nvars;
    while (i > 0) {
      --i;
      const unsigned rest = std::accumulate(e.begin(), e.end(), 0u) - e[i];
      if (rest + e[i] + 1 <= hi) {
        ++e[i];
        break;
      }
      e[i] = 0;
      if (i == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VariableList& vars) : text_(text), vars_(vars) {}

  Polynomial parse_all() {
    Polynomial p = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  Polynomial parse_sum() {
    Polynomial total(vars_);
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    Polynomial t = parse_term();
    total += negate ? -t : t;
    while (true) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial next = parse_term();
      total += c == '-' ? -next : next;
    }
    return total;
  }

  Polynomial parse_term() {
    Polynomial value = parse_power();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        value = value * parse_power();
      } else if (c == '/') {
        ++pos_;
        skip_ws();
        const Integer d = parse_integer();
        if (d == 0) fail("division by zero");
        value *= Rational(1, 1) / Rational(d);
      } else if (digit(c) || ident_start(c) || c == '(') {
        value = value * parse_power();
      } else {
        break;
      }
    }
    return value;
  }

  Polynomial parse_power() {
    Polynomial base = parse_atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const Integer e = parse_integer();
      if (e > 4096) fail("exponent too large");
      Polynomial out = Polynomial::constant(vars_, Rational(1));
      for (unsigned long k = 0; k < e.get_ui(); ++k) out = out * base;
      return out;
    }
    return base;
  }

  Polynomial parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (digit(c)) return Polynomial::constant(vars_, Rational(parse_integer()));
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("undeclared variable " + name);
      }
      return Polynomial::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Integer parse_integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  const VariableList& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, const VariableList& vars) {
  return PolyParser(text, vars).parse_all();
}

}  // namespace psatz
