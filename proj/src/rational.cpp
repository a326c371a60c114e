#include "psatz/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace psatz {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double has no rational value");
  Rational q(x);
  q.canonicalize();
  return q;
}

Integer round_half_away(const Rational& q) {
  // floor(|q| + 1/2) with the sign restored
  Rational a = abs(q);
  Integer twice = 2 * a.get_num() + a.get_den();
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), twice.get_mpz_t(), Integer(2 * a.get_den()).get_mpz_t());
  return sgn(q) < 0 ? Integer(-r) : r;
}

Integer round_half_away(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot round a non-finite double");
  return Integer(std::round(x));
}

}  // namespace psatz
