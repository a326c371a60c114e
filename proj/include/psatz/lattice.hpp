#pragma once

#include "psatz/linalg.hpp"
#include "psatz/search_space.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

namespace psatz {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

inline const Rational kDefaultLllDelta{99, 100};

/// Exact integral LLL on the rows of `basis`. Throws std::invalid_argument
/// when the rows are linearly dependent. When `transform` is given it
/// receives the unimodular U with result = U * basis.
IntMatrix lll_reduce(IntMatrix basis, const Rational& delta = kDefaultLllDelta, IntMatrix* transform = nullptr);

struct KernelCandidates {
  std::vector<RationalVector> v;  // v = w B, original block coordinates
  std::vector<IntVector> w;       // compressed coordinates
  std::vector<double> w_l1;
  std::vector<double> residual;   // ||G w||_2
};

struct KernelSearchOptions {
  double alpha0 = 1e15;
  double beta = 10.0;
  double gamma = 10.0;
};

/// Short integer vectors w with G w ~ 0, from LLL on the rows (e_i | round(alpha G)_i),
/// alpha = alpha0 / ||G||_F. The first reduced row is always kept; later rows
/// pass the beta (l1 size) and gamma (residual) filters relative to it.
KernelCandidates find_kernel_vectors(const Eigen::MatrixXd& g, const QMatrix& b, const KernelSearchOptions& options = {});

/// Rational y' with offset + sum y'_i basis_i close to `v_float` (packed
/// entries) and small numerators, by LLL on the coefficient-simplification
/// lattice for one value of mu. Returns nullopt when no reduced row has a
/// nonzero leading coordinate.
std::optional<RationalVector> simplify_solution(const SdpSearchSpace& space, std::span<const double> v_float, double mu,
                                                double beta_big = 1e19);

struct SimplifySchedule {
  double mu0 = 256.0;
  double factor = 4.0;
  int steps = 12;
};

/// Runs simplify_solution over the geometric mu schedule and returns the first
/// y' accepted by `accept` (normally an exact PSD check).
std::optional<RationalVector> simplify_with_schedule(const SdpSearchSpace& space, std::span<const double> v_float,
                                                     const std::function<bool(const RationalVector&)>& accept,
                                                     const SimplifySchedule& schedule = {}, double beta_big = 1e19);

}  // namespace psatz
