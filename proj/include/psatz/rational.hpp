#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace psatz {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always kept in canonical form (positive
/// denominator, reduced, zero as 0/1).
using Rational = mpq_class;

using RationalVector = std::vector<Rational>;

/// Parses `num` or `num/den` with an optional leading sign.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// `num` when the denominator is one, `num/den` otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);

/// Nearest integer, ties rounded away from zero.
Integer round_half_away(const Rational& q);
Integer round_half_away(double x);

}  // namespace psatz
