#pragma once

#include "psatz/search_space.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace psatz {

/// Floating-point copy of a search space after per-block compression
/// G_i = B F_i B^T. Coordinates y are the same as in the exact space.
struct FloatSpace {
  std::vector<Eigen::MatrixXd> offset;              // [block]
  std::vector<std::vector<Eigen::MatrixXd>> basis;  // [i][block]
  std::vector<QMatrix> compressors;                 // B per block

  std::size_t dimension() const { return basis.size(); }
  std::size_t num_blocks() const { return offset.size(); }
  Eigen::MatrixXd evaluate(std::span<const double> y, std::size_t block) const;
};

/// Row-span compressors B per block, from the block slices of offset and basis.
std::vector<QMatrix> compressors_for(const SdpSearchSpace& space);

FloatSpace compress(const SdpSearchSpace& space, const std::vector<QMatrix>& compressors);

enum class SolveStatus { Converged, IterationLimit };

struct NumericSolution {
  std::vector<double> y;
  std::vector<double> block_min_eigenvalues;  // of the compressed blocks; +inf for empty ones
  double t = 0.0;                             // best min eigenvalue found
  std::vector<double> t_history;              // best t after each barrier stage
  int iterations = 0;
  SolveStatus status = SolveStatus::Converged;

  double min_eigenvalue() const;
  /// True when the minimum eigenvalue is not clearly negative.
  bool feasible(double tolerance = 1e-6) const;
};

struct SolverOptions {
  double tolerance = 1e-9;
  int max_iterations = 500;
};

/// Barrier method for max t s.t. F(y) - t I >= 0 on every block. A trace
/// barrier keeps the problem bounded when the spectrahedron is unbounded.
NumericSolution solve_feasibility(const FloatSpace& space, const std::optional<std::vector<double>>& warm_start,
                                  const SolverOptions& options = {});

/// Least-squares y' with new.offset + sum y'_i new.basis_i closest in
/// Frobenius norm to the old space at `previous_y`. Minimum-norm on rank loss.
std::vector<double> warm_start_projection(std::span<const double> previous_y, const SdpSearchSpace& old_space,
                                          const SdpSearchSpace& new_space);

/// Packed F(y) in floating point.
std::vector<double> float_point(const SdpSearchSpace& space, std::span<const double> y);

/// Numeric back end used by the driver.
class SdpSolver {
 public:
  virtual ~SdpSolver() = default;
  virtual NumericSolution solve(const SdpSearchSpace& exact, const FloatSpace& compressed,
                                const std::optional<std::vector<double>>& warm_start) = 0;
  virtual std::string name() const = 0;
};

class InternalSolver : public SdpSolver {
 public:
  explicit InternalSolver(SolverOptions options = {}) : options_(options) {}
  NumericSolution solve(const SdpSearchSpace& exact, const FloatSpace& compressed,
                        const std::optional<std::vector<double>>& warm_start) override;
  std::string name() const override { return "internal"; }

 private:
  SolverOptions options_;
};

/// Writes the uncompressed problem to `path` in sparse SDPA format and reads
/// y back from `path`.sol (whitespace-separated floats, one per y_i).
/// Invokes no external program.
class SdpaFileSolver : public SdpSolver {
 public:
  explicit SdpaFileSolver(std::string path) : path_(std::move(path)) {}
  NumericSolution solve(const SdpSearchSpace& exact, const FloatSpace& compressed,
                        const std::optional<std::vector<double>>& warm_start) override;
  std::string name() const override { return "sdpa-file:" + path_; }

 private:
  std::string path_;
};

/// Minimum eigenvalue of each compressed block at y.
std::vector<double> block_min_eigenvalues(const FloatSpace& space, std::span<const double> y);

}  // namespace psatz
