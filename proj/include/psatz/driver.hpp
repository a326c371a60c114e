#pragma once

#include "psatz/lattice.hpp"
#include "psatz/psd.hpp"
#include "psatz/sdp.hpp"
#include "psatz/search_space.hpp"
#include "psatz/witness.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

namespace psatz {

struct SearchConfig {
  /// Largest multiplier degree tried; 0 picks the starting bound only.
  unsigned max_degree = 0;
  bool use_products = false;
  /// Post-hoc coefficient simplification by lattice reduction.
  bool simplify = false;
  KernelSearchOptions kernel;
  /// A lattice vector w counts as a kernel vector only when
  /// ||G w|| <= kernel_tolerance * ||G||_F * ||w||.
  double kernel_tolerance = 1e-5;
  /// Candidates with a larger integer coefficient are discarded.
  double kernel_max_coefficient = 1e4;
  double precheck_tolerance = 1e-10;
  /// Numeric solutions whose minimum eigenvalue is below
  /// -infeasibility_tolerance * scale are treated as "no PSD point".
  double infeasibility_tolerance = 1e-5;
  long initial_denominator = 1000000;
  int rounding_attempts = 3;
  std::uint64_t seed = 1;
  SolverOptions solver_options;
  std::shared_ptr<SdpSolver> solver;               // internal solver when null
  std::function<void(const std::string&)> log;     // silent when null
};

struct SearchFailure {
  enum class Exit {
    BasesTooSmall,
    NoNumericSolution,
    RestrictionInfeasible,
    NoProgress,
    IterationCap,
    BoundExhausted,
    VerificationFailed,
  };
  Exit exit;
  std::string reason;
};

std::string to_string(SearchFailure::Exit e);

struct PsdPoint {
  RationalVector y;
  RationalVector packed;                   // F(y)
  std::vector<SosDecomposition> blocks;    // one per block
  int rounds = 0;                          // numeric solves performed
  std::vector<std::size_t> dimensions;     // search-space dimension per round
};

using PsdPointResult = std::variant<PsdPoint, SearchFailure>;

/// Rational point of the spectrahedron by numeric solving, rounding, exact
/// PSD checks and kernel-vector restriction. Every returned block carries an
/// exact SOS decomposition of F(y).
PsdPointResult find_rational_psd_point(const SdpSearchSpace& space, const SearchConfig& config);

/// Same loop without kernel restriction: round the numeric solution and check.
PsdPointResult naive_rational_psd_point(const SdpSearchSpace& space, const SearchConfig& config);

/// Best rational approximation with denominator <= bound (continued fractions
/// on the exact value of x, semiconvergents included).
Rational best_rational_approximation(const Rational& x, const Integer& bound);
RationalVector round_to_rational(std::span<const double> y, const Integer& bound);

using ProofResult = std::variant<PsatzWitness, SearchFailure>;

/// Quotient degrees as monomial-basis degrees (d1, d2) of Q_1 and Q_2:
/// Q_1 has degree 2*d1, Q_2 degree 2*d2 = 2*d1 + deg P.
using QuotientDegrees = std::pair<unsigned, unsigned>;

/// Witness that problem.target is nonnegative under the assumptions. Tries a
/// plain SOS first, then d1 = 1, 2, ... up to max_degree / 2 (default deg P / 2),
/// unless `degrees` pins a single pair.
ProofResult prove_nonneg(const ProblemFile& problem, const SearchConfig& config,
                         std::optional<QuotientDegrees> degrees = std::nullopt);

/// Witness sum_j Q_j T_j + 1 = 0 for the assumptions. Degree bounds start at
/// max deg P_j rounded up to even and grow by 2 up to max_degree. With
/// use_products, square-free products join the multiplicands by subset size.
ProofResult prove_unsat(const ProblemFile& problem, const SearchConfig& config);

ProofResult prove(const ProblemFile& problem, const SearchConfig& config);

/// Witness part of a solved SOS problem with `labels[b]` for block b.
PsatzWitness assemble_witness(const ProblemFile& problem, const SosProblem& sos, const std::vector<std::string>& labels,
                              const PsdPoint& point);

}  // namespace psatz
