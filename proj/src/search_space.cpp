#include "psatz/search_space.hpp"

#include "psatz/newton.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace psatz {

BlockStructure::BlockStructure(std::vector<std::size_t> block_sizes) : sizes(std::move(block_sizes)) {
  std::size_t acc = 0;
  for (std::size_t n : sizes) {
    offsets.push_back(acc);
    acc += n * (n + 1) / 2;
  }
}

std::size_t BlockStructure::packed_size() const {
  if (sizes.empty()) return 0;
  return offsets.back() + sizes.back() * (sizes.back() + 1) / 2;
}

std::size_t BlockStructure::index(std::size_t block, std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t n = sizes[block];
  return offsets[block] + i * n - (i * (i + 1)) / 2 + j;
}

RationalVector SdpSearchSpace::point(std::span<const Rational> y) const {
  if (y.size() != basis.size()) throw std::invalid_argument("parameter vector has wrong length");
  RationalVector p = offset;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (sgn(basis[i][k]) != 0) p[k] += y[i] * basis[i][k];
    }
  }
  return p;
}

QMatrix SdpSearchSpace::block_of(std::span<const Rational> packed, std::size_t block) const {
  const std::size_t n = blocks.sizes.at(block);
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = packed[blocks.index(block, i, j)];
      m(j, i) = m(i, j);
    }
  }
  return m;
}

SdpSearchSpace SdpSearchSpace::from_blocks(const std::vector<QMatrix>& offset_blocks,
                                           const std::vector<std::vector<QMatrix>>& basis_blocks) {
  std::vector<std::size_t> sizes;
  for (const auto& b : offset_blocks) {
    if (!b.is_symmetric()) throw std::invalid_argument("offset block is not symmetric");
    sizes.push_back(b.rows());
  }
  SdpSearchSpace s;
  s.blocks = BlockStructure(sizes);
  auto pack = [&](const std::vector<QMatrix>& ms) {
    if (ms.size() != sizes.size()) throw std::invalid_argument("block count mismatch");
    RationalVector v(s.blocks.packed_size());
    for (std::size_t b = 0; b < ms.size(); ++b) {
      if (ms[b].rows() != sizes[b] || !ms[b].is_symmetric()) throw std::invalid_argument("block shape mismatch");
      for (std::size_t i = 0; i < sizes[b]; ++i) {
        for (std::size_t j = i; j < sizes[b]; ++j) v[s.blocks.index(b, i, j)] = ms[b](i, j);
      }
    }
    return v;
  };
  s.offset = pack(offset_blocks);
  for (const auto& bb : basis_blocks) s.basis.push_back(pack(bb));
  return s;
}

std::vector<std::vector<Monomial>> select_bases(std::span<const Polynomial> multiplicands, const Polynomial& target,
                                                unsigned degree_bound, bool homogeneous) {
  if (multiplicands.empty()) throw std::invalid_argument("select_bases needs at least one multiplicand");
  const std::size_t nvars = target.num_variables();
  const bool single_sos = multiplicands.size() == 1 && multiplicands[0].degree() == 0 &&
                          multiplicands[0].coefficient(Monomial(nvars)) == 1;
  if (single_sos && !target.is_zero()) return {newton_halved_monomials(target, homogeneous)};

  int product_cap = std::max(static_cast<int>(degree_bound), target.degree());
  bool all_homogeneous = target.is_zero() || target.is_homogeneous();
  for (const auto& p : multiplicands) {
    product_cap = std::max(product_cap, p.degree());
    all_homogeneous = all_homogeneous && !p.is_zero() && p.is_homogeneous();
  }
  const bool graded = homogeneous && all_homogeneous;
  const int graded_degree = target.is_zero() ? product_cap : target.degree();

  std::vector<std::vector<Monomial>> out;
  for (const auto& p : multiplicands) {
    const int room = std::min(static_cast<int>(degree_bound), product_cap - std::max(p.degree(), 0));
    if (room < 0) {
      out.emplace_back();
      continue;
    }
    const unsigned half = static_cast<unsigned>(room) / 2;
    if (graded) {
      const int rest = graded_degree - p.degree();
      if (rest < 0 || rest % 2 != 0 || static_cast<unsigned>(rest / 2) > half) {
        out.emplace_back();
        continue;
      }
      out.push_back(monomials_of_degree(nvars, rest / 2, rest / 2));
    } else {
      out.push_back(monomials_of_degree(nvars, 0, half));
    }
  }
  return out;
}

SpaceResult build_search_space(const SosProblem& problem) {
  const std::size_t nblocks = problem.multiplicands.size();
  if (nblocks == 0) throw std::invalid_argument("SOS problem without multiplicands");
  if (problem.bases.size() != nblocks) throw std::invalid_argument("one monomial basis per multiplicand required");
  for (const auto& p : problem.multiplicands) {
    if (p.variables() != problem.vars) throw VariableMismatch("multiplicand variables differ from the problem");
  }
  if (problem.target.variables() != problem.vars) throw VariableMismatch("target variables differ from the problem");

  std::vector<std::size_t> sizes;
  for (const auto& b : problem.bases) {
    if (b.empty()) throw std::invalid_argument("empty monomial basis");
    sizes.push_back(b.size());
  }
  BlockStructure blocks(sizes);
  const std::size_t unknowns = blocks.packed_size();

  // One equation per monomial of sum_j P_j (M_j Q_j M_j^T) - target.
  std::map<Monomial, std::map<std::size_t, Rational>> rows;
  for (std::size_t b = 0; b < nblocks; ++b) {
    const auto& basis = problem.bases[b];
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j) {
        const Monomial mm = basis[i] * basis[j];
        const Rational weight(i == j ? 1 : 2);
        const std::size_t col = blocks.index(b, i, j);
        for (const auto& [t, c] : problem.multiplicands[b].terms()) rows[mm * t][col] += weight * c;
      }
    }
  }
  for (const auto& [t, c] : problem.target.terms()) rows.try_emplace(t);

  QMatrix a(0, unknowns);
  RationalVector rhs;
  RationalVector row(unknowns);
  for (const auto& [mono, entries] : rows) {
    std::fill(row.begin(), row.end(), Rational(0));
    for (const auto& [col, c] : entries) row[col] = c;
    a.append_row(row);
    rhs.push_back(problem.target.coefficient(mono));
  }
  if (problem.unit_trace_block) {
    const std::size_t b = *problem.unit_trace_block;
    if (b >= nblocks) throw std::invalid_argument("unit trace block out of range");
    std::fill(row.begin(), row.end(), Rational(0));
    for (std::size_t i = 0; i < sizes[b]; ++i) row[blocks.index(b, i, i)] = 1;
    a.append_row(row);
    rhs.push_back(Rational(1));
  }

  auto sol = solve_affine(a, rhs);
  if (!sol) {
    return Infeasible{Infeasible::Cause::BasesTooSmall,
                      "no symmetric multipliers over these monomial bases satisfy the identity"};
  }
  SdpSearchSpace space;
  space.blocks = std::move(blocks);
  space.offset = std::move(sol->offset);
  space.basis = std::move(sol->basis);
  space.monomial_bases = problem.bases;
  return space;
}

SpaceResult restrict_search_space(const SdpSearchSpace& space, std::span<const KernelVector> kernel) {
  const std::size_t m = space.dimension();
  QMatrix a(0, m);
  RationalVector rhs;
  RationalVector row(m);
  for (const KernelVector& kv : kernel) {
    const std::size_t b = kv.block;
    if (b >= space.blocks.num_blocks()) throw std::invalid_argument("kernel vector block out of range");
    const std::size_t n = space.blocks.sizes[b];
    if (kv.v.size() != n) throw std::invalid_argument("kernel vector has wrong length for its block");
    for (std::size_t r = 0; r < n; ++r) {
      // (F(y)_b v)_r = (offset_b v)_r + sum_i y_i (F_i,b v)_r
      Rational constant(0);
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(kv.v[c]) == 0) continue;
        const std::size_t k = space.blocks.index(b, r, c);
        if (sgn(space.offset[k]) != 0) constant += space.offset[k] * kv.v[c];
      }
      bool any = false;
      for (std::size_t i = 0; i < m; ++i) {
        Rational s(0);
        for (std::size_t c = 0; c < n; ++c) {
          if (sgn(kv.v[c]) == 0) continue;
          const Rational& f = space.basis[i][space.blocks.index(b, r, c)];
          if (sgn(f) != 0) s += f * kv.v[c];
        }
        any = any || sgn(s) != 0;
        row[i] = std::move(s);
      }
      if (!any) {
        if (sgn(constant) != 0) {
          return Infeasible{Infeasible::Cause::KernelRestriction, "kernel constraint contradicts the search space"};
        }
        continue;
      }
      a.append_row(row);
      rhs.push_back(-constant);
    }
  }
  if (a.rows() == 0) return space;

  auto sol = solve_affine(a, rhs);
  if (!sol) return Infeasible{Infeasible::Cause::KernelRestriction, "kernel constraints are inconsistent"};

  SdpSearchSpace out;
  out.blocks = space.blocks;
  out.monomial_bases = space.monomial_bases;
  out.offset = space.point(sol->offset);
  const std::size_t e = space.offset.size();
  out.basis.reserve(sol->dimension());
  for (const RationalVector& coeffs : sol->basis) {
    RationalVector f(e, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(coeffs[i]) == 0) continue;
      for (std::size_t k = 0; k < e; ++k) {
        if (sgn(space.basis[i][k]) != 0) f[k] += coeffs[i] * space.basis[i][k];
      }
    }
    out.basis.push_back(std::move(f));
  }
  return out;
}

}  // namespace psatz
