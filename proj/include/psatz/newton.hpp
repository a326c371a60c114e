#pragma once

#include "psatz/polynomial.hpp"

#include <vector>

namespace psatz {

/// Exact convex hull of a finite set of integer points, described by the
/// equations of its affine hull and its facet inequalities within that hull.
class ExponentHull {
 public:
  explicit ExponentHull(std::vector<std::vector<Rational>> points);

  bool contains(std::span<const Rational> x) const;
  std::size_t dimension() const { return dimension_; }
  std::size_t num_facets() const { return facets_.size(); }

 private:
  struct HalfSpace {
    RationalVector normal;
    Rational offset;  // normal . x >= offset
  };
  std::vector<RationalVector> points_;
  std::vector<HalfSpace> equations_;  // normal . x == offset
  std::vector<HalfSpace> facets_;
  std::size_t dimension_ = 0;
};

/// Monomials m such that 2*exponents(m) lies in the Newton polytope of p, in
/// increasing graded-lex order. With `homogeneous` set and p homogeneous of
/// degree 2d, only degree-d monomials are returned.
std::vector<Monomial> newton_halved_monomials(const Polynomial& p, bool homogeneous = false);

}  // namespace psatz
