#pragma once

#include "psatz/linalg.hpp"
#include "psatz/polynomial.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace psatz {

/// Sizes of the diagonal blocks and the layout of their packed upper
/// triangles: block b, entry (i, j) with i <= j, lives at
/// offsets[b] + i * n_b - i * (i + 1) / 2 + j.
struct BlockStructure {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> offsets;

  BlockStructure() = default;
  explicit BlockStructure(std::vector<std::size_t> block_sizes);

  std::size_t num_blocks() const { return sizes.size(); }
  std::size_t packed_size() const;
  std::size_t index(std::size_t block, std::size_t i, std::size_t j) const;
  bool operator==(const BlockStructure&) const = default;
};

/// Find SOS multipliers Q_j over monomial bases M_j with
/// sum_j P_j * (M_j Q_j M_j^T) = target.
struct SosProblem {
  VariableList vars;
  std::vector<Polynomial> multiplicands;
  std::vector<std::vector<Monomial>> bases;
  Polynomial target;
  /// When set, trace(Q_j) = 1 is imposed for this block (keeps Q_j nonzero).
  std::optional<std::size_t> unit_trace_block;
};

/// Affine family F(y) = offset + sum_i y_i basis_i of symmetric block-diagonal
/// matrices, all stored as packed upper triangles. `offset` plays the role of
/// -F0 in the usual SDP notation.
struct SdpSearchSpace {
  BlockStructure blocks;
  RationalVector offset;
  std::vector<RationalVector> basis;
  std::vector<std::vector<Monomial>> monomial_bases;  // empty for synthetic spaces

  std::size_t dimension() const { return basis.size(); }

  /// Packed F(y).
  RationalVector point(std::span<const Rational> y) const;
  QMatrix block_of(std::span<const Rational> packed, std::size_t block) const;
  QMatrix offset_block(std::size_t block) const { return block_of(offset, block); }
  QMatrix basis_block(std::size_t i, std::size_t block) const { return block_of(basis[i], block); }

  /// Builds a space from explicit symmetric blocks. `basis_blocks[i][b]` is
  /// block b of basis matrix i.
  static SdpSearchSpace from_blocks(const std::vector<QMatrix>& offset_blocks,
                                    const std::vector<std::vector<QMatrix>>& basis_blocks);
};

/// Why no search space (or no restricted space) exists.
struct Infeasible {
  enum class Cause { BasesTooSmall, KernelRestriction };
  Cause cause;
  std::string reason;
};

using SpaceResult = std::variant<SdpSearchSpace, Infeasible>;

/// Per-multiplicand monomial bases for a degree bound on the multipliers.
/// The single-SOS case (one multiplicand equal to 1) uses the Newton polytope
/// of the target. Otherwise a multiplier Q_j has degree at most `degree_bound`
/// and deg(P_j) + deg(Q_j) stays within max(degree_bound, deg target, max deg P).
/// A returned basis may be empty, which means the bound is too small for
/// that multiplicand.
std::vector<std::vector<Monomial>> select_bases(std::span<const Polynomial> multiplicands, const Polynomial& target,
                                                unsigned degree_bound, bool homogeneous);

/// Solves the coefficient-matching system exactly and reshapes the solution
/// set into block-diagonal symmetric matrices.
SpaceResult build_search_space(const SosProblem& problem);

struct KernelVector {
  std::size_t block = 0;
  RationalVector v;
};

/// The subfamily {F in space : F_b v = 0 for every (b, v)}.
SpaceResult restrict_search_space(const SdpSearchSpace& space, std::span<const KernelVector> kernel);

}  // namespace psatz
