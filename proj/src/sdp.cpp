#include "psatz/sdp.hpp"

#include "psatz/sdpa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace psatz {

namespace {

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  }
  return out;
}

Eigen::MatrixXd packed_block(const SdpSearchSpace& space, std::span<const Rational> packed, std::size_t b) {
  const std::size_t n = space.blocks.sizes[b];
  Eigen::MatrixXd out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out(i, j) = out(j, i) = to_double(packed[space.blocks.index(b, i, j)]);
    }
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(m.rows() - 1)));
}

// State of the barrier iteration in scaled coordinates z = (y_hat, t).
struct Barrier {
  const std::vector<Eigen::MatrixXd>& offset;
  std::vector<std::vector<Eigen::MatrixXd>> basis;  // [block][i], unit Frobenius norm overall
  std::vector<double> trace_of;                     // tr of each scaled basis matrix
  double offset_trace = 0.0;
  double trace_cap = 0.0;
  std::size_t m = 0;

  Eigen::MatrixXd slack(const Eigen::VectorXd& z, std::size_t b) const {
    Eigen::MatrixXd s = offset[b];
    for (std::size_t i = 0; i < m; ++i) {
      if (z(i) != 0.0) s.noalias() += z(i) * basis[b][i];
    }
    s.diagonal().array() -= z(m);
    return s;
  }

  double trace_slack(const Eigen::VectorXd& z) const {
    double tr = offset_trace;
    for (std::size_t i = 0; i < m; ++i) tr += z(i) * trace_of[i];
    return trace_cap - tr;
  }

  // Barrier value, or nullopt outside the domain.
  std::optional<double> value(const Eigen::VectorXd& z, double inv_mu) const {
    double f = -z(m) * inv_mu;
    for (std::size_t b = 0; b < offset.size(); ++b) {
      if (offset[b].rows() == 0) continue;
      Eigen::LLT<Eigen::MatrixXd> llt(slack(z, b));
      if (llt.info() != Eigen::Success) return std::nullopt;
      const Eigen::VectorXd d = llt.matrixLLT().diagonal();
      for (Eigen::Index k = 0; k < d.size(); ++k) {
        if (!(d(k) > 0.0)) return std::nullopt;
        f -= 2.0 * std::log(d(k));
      }
    }
    const double st = trace_slack(z);
    if (!(st > 0.0)) return std::nullopt;
    return f - std::log(st);
  }
};

}  // namespace

Eigen::MatrixXd FloatSpace::evaluate(std::span<const double> y, std::size_t block) const {
  Eigen::MatrixXd out = offset[block];
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0.0) out.noalias() += y[i] * basis[i][block];
  }
  return out;
}

std::vector<QMatrix> compressors_for(const SdpSearchSpace& space) {
  std::vector<QMatrix> out;
  for (std::size_t b = 0; b < space.blocks.num_blocks(); ++b) {
    std::vector<QMatrix> slices;
    slices.reserve(space.dimension() + 1);
    slices.push_back(space.offset_block(b));
    for (std::size_t i = 0; i < space.dimension(); ++i) slices.push_back(space.basis_block(i, b));
    out.push_back(row_span_basis(slices));
  }
  return out;
}

FloatSpace compress(const SdpSearchSpace& space, const std::vector<QMatrix>& compressors) {
  if (compressors.size() != space.blocks.num_blocks()) throw std::invalid_argument("one compressor per block required");
  FloatSpace out;
  out.compressors = compressors;
  std::vector<Eigen::MatrixXd> bd;
  for (std::size_t b = 0; b < compressors.size(); ++b) {
    if (compressors[b].cols() != space.blocks.sizes[b]) throw std::invalid_argument("compressor has wrong width");
    bd.push_back(to_eigen(compressors[b]));
  }
  auto squeeze = [&](std::span<const Rational> packed, std::size_t b) {
    Eigen::MatrixXd g = bd[b] * packed_block(space, packed, b) * bd[b].transpose();
    return Eigen::MatrixXd(0.5 * (g + g.transpose()));
  };
  for (std::size_t b = 0; b < compressors.size(); ++b) out.offset.push_back(squeeze(space.offset, b));
  out.basis.resize(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    for (std::size_t b = 0; b < compressors.size(); ++b) out.basis[i].push_back(squeeze(space.basis[i], b));
  }
  return out;
}

double NumericSolution::min_eigenvalue() const {
  double m = std::numeric_limits<double>::infinity();
  for (double e : block_min_eigenvalues) m = std::min(m, e);
  return m;
}

bool NumericSolution::feasible(double tolerance) const {
  return min_eigenvalue() >= -tolerance * std::max(1.0, std::abs(t));
}

std::vector<double> block_min_eigenvalues(const FloatSpace& space, std::span<const double> y) {
  std::vector<double> out;
  for (std::size_t b = 0; b < space.num_blocks(); ++b) out.push_back(min_eigenvalue(space.evaluate(y, b)));
  return out;
}

NumericSolution solve_feasibility(const FloatSpace& space, const std::optional<std::vector<double>>& warm_start,
                                  const SolverOptions& options) {
  const std::size_t m = space.dimension();
  const std::size_t nb = space.num_blocks();
  NumericSolution sol;
  sol.y = warm_start.value_or(std::vector<double>(m, 0.0));
  if (sol.y.size() != m) throw std::invalid_argument("warm start has wrong length");

  std::size_t total = 0;
  for (const auto& o : space.offset) total += static_cast<std::size_t>(o.rows());
  if (total == 0 || m == 0) {
    sol.block_min_eigenvalues = block_min_eigenvalues(space, sol.y);
    sol.t = sol.min_eigenvalue();
    sol.t_history.push_back(sol.t);
    return sol;
  }

  // Scale every basis direction to unit Frobenius norm.
  std::vector<double> scale(m, 1.0);
  Barrier bar{space.offset, std::vector<std::vector<Eigen::MatrixXd>>(nb), std::vector<double>(m, 0.0)};
  bar.m = m;
  for (std::size_t i = 0; i < m; ++i) {
    double s2 = 0.0;
    for (std::size_t b = 0; b < nb; ++b) s2 += space.basis[i][b].squaredNorm();
    if (s2 > 0.0) scale[i] = std::sqrt(s2);
  }
  for (std::size_t b = 0; b < nb; ++b) {
    bar.offset_trace += space.offset[b].trace();
    for (std::size_t i = 0; i < m; ++i) {
      bar.basis[b].push_back(space.basis[i][b] / scale[i]);
      bar.trace_of[i] += bar.basis[b][i].trace();
    }
  }

  Eigen::VectorXd z(m + 1);
  for (std::size_t i = 0; i < m; ++i) z(i) = sol.y[i] * scale[i];
  double lmin = std::numeric_limits<double>::infinity();
  double magnitude = 0.0;
  double trace0 = bar.offset_trace;
  for (std::size_t i = 0; i < m; ++i) trace0 += z(i) * bar.trace_of[i];
  {
    Eigen::VectorXd z0 = z;
    z0(m) = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (space.offset[b].rows() == 0) continue;
      const Eigen::MatrixXd s = bar.slack(z0, b);
      lmin = std::min(lmin, min_eigenvalue(s));
      magnitude = std::max(magnitude, max_abs_eigenvalue(s));
    }
  }
  magnitude = std::max(magnitude, 1.0);
  z(m) = lmin - 0.5 * magnitude;
  const double n_total = static_cast<double>(total);
  bar.trace_cap = trace0 + 10.0 * n_total * magnitude;
  const double nu = n_total + 1.0;

  double mu = magnitude;
  double best_t = -std::numeric_limits<double>::infinity();
  const std::size_t nz = m + 1;
  std::size_t rows = 0;
  for (std::size_t b = 0; b < nb; ++b) rows += static_cast<std::size_t>(space.offset[b].size());
  Eigen::MatrixXd vmat(rows, nz);
  bool done = false;

  while (!done) {
    const double inv_mu = 1.0 / mu;
    for (int inner = 0; inner < 60; ++inner) {
      if (sol.iterations >= options.max_iterations) {
        sol.status = SolveStatus::IterationLimit;
        done = true;
        break;
      }
      ++sol.iterations;
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(nz);
      grad(m) = -inv_mu;
      std::size_t r0 = 0;
      for (std::size_t b = 0; b < nb; ++b) {
        const Eigen::Index n = space.offset[b].rows();
        if (n == 0) continue;
        Eigen::LLT<Eigen::MatrixXd> llt(bar.slack(z, b));
        const Eigen::MatrixXd l = llt.matrixL();
        const auto lo = l.triangularView<Eigen::Lower>();
        for (std::size_t k = 0; k < nz; ++k) {
          Eigen::MatrixXd d = k < m ? bar.basis[b][k] : Eigen::MatrixXd(-Eigen::MatrixXd::Identity(n, n));
          Eigen::MatrixXd x = lo.solve(d);
          Eigen::MatrixXd v = lo.solve(x.transpose());
          grad(k) -= v.trace();
          vmat.col(k).segment(r0, n * n) = Eigen::Map<Eigen::VectorXd>(v.data(), n * n);
        }
        r0 += static_cast<std::size_t>(n * n);
      }
      const double st = bar.trace_slack(z);
      Eigen::VectorXd a = Eigen::VectorXd::Zero(nz);
      for (std::size_t i = 0; i < m; ++i) a(i) = bar.trace_of[i];
      grad += a / st;
      Eigen::MatrixXd hess = vmat.transpose() * vmat;
      hess.noalias() += (a * a.transpose()) / (st * st);

      // Jacobi-scaled solve; fall back to a rank-revealing solve.
      Eigen::VectorXd dscale = hess.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
      Eigen::MatrixXd hs = dscale.asDiagonal() * hess * dscale.asDiagonal();
      Eigen::VectorXd rhs = -(dscale.asDiagonal() * grad);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hs);
      Eigen::VectorXd step;
      if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
        step = ldlt.solve(rhs);
      } else {
        step = hs.completeOrthogonalDecomposition().solve(rhs);
      }
      step = dscale.asDiagonal() * step;
      const double decrement2 = -grad.dot(step);
      if (!(decrement2 > 1e-10)) break;
      const double lambda = std::sqrt(decrement2);
      double alpha = lambda > 0.25 ? 1.0 / (1.0 + lambda) : 1.0;
      const double f0 = *bar.value(z, inv_mu);
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls) {
        const Eigen::VectorXd trial = z + alpha * step;
        const auto f = bar.value(trial, inv_mu);
        if (f && *f <= f0 - 0.25 * alpha * decrement2) {
          z = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved || decrement2 < 1e-6) break;
    }
    best_t = std::max(best_t, z(m));
    sol.t_history.push_back(best_t);
    if (done) break;

    double fro = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      if (space.offset[b].rows() == 0) continue;
      Eigen::MatrixXd s = bar.slack(z, b);
      s.diagonal().array() += z(m);
      fro += s.squaredNorm();
    }
    const double sigma = std::max(1e-8, std::sqrt(fro / n_total));
    if (nu * mu < options.tolerance * sigma) break;
    mu *= 0.25;
  }

  for (std::size_t i = 0; i < m; ++i) sol.y[i] = z(i) / scale[i];
  sol.block_min_eigenvalues = block_min_eigenvalues(space, sol.y);
  sol.t = best_t;
  return sol;
}

std::vector<double> float_point(const SdpSearchSpace& space, std::span<const double> y) {
  std::vector<double> out(space.offset.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = to_double(space.offset[k]);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (sgn(space.basis[i][k]) != 0) out[k] += y[i] * to_double(space.basis[i][k]);
    }
  }
  return out;
}

std::vector<double> warm_start_projection(std::span<const double> previous_y, const SdpSearchSpace& old_space,
                                          const SdpSearchSpace& new_space) {
  if (!(old_space.blocks == new_space.blocks)) throw std::invalid_argument("spaces have different block structure");
  if (previous_y.size() != old_space.dimension()) throw std::invalid_argument("previous y has wrong length");
  const std::size_t mp = new_space.dimension();
  if (mp == 0) return {};
  const std::vector<double> target = float_point(old_space, previous_y);
  const std::size_t e = target.size();

  // Off-diagonal packed entries appear twice in the Frobenius norm.
  std::vector<double> weight(e, 1.0);
  for (std::size_t b = 0; b < new_space.blocks.num_blocks(); ++b) {
    for (std::size_t i = 0; i < new_space.blocks.sizes[b]; ++i) {
      for (std::size_t j = i + 1; j < new_space.blocks.sizes[b]; ++j) weight[new_space.blocks.index(b, i, j)] = std::sqrt(2.0);
    }
  }
  Eigen::MatrixXd a(e, mp);
  Eigen::VectorXd rhs(e);
  for (std::size_t k = 0; k < e; ++k) {
    rhs(k) = weight[k] * (target[k] - to_double(new_space.offset[k]));
    for (std::size_t i = 0; i < mp; ++i) a(k, i) = weight[k] * to_double(new_space.basis[i][k]);
  }
  const Eigen::VectorXd y = a.completeOrthogonalDecomposition().solve(rhs);
  return {y.data(), y.data() + y.size()};
}

NumericSolution InternalSolver::solve(const SdpSearchSpace&, const FloatSpace& compressed,
                                      const std::optional<std::vector<double>>& warm_start) {
  return solve_feasibility(compressed, warm_start, options_);
}

NumericSolution SdpaFileSolver::solve(const SdpSearchSpace& exact, const FloatSpace& compressed,
                                      const std::optional<std::vector<double>>&) {
  {
    std::ofstream out(path_);
    if (!out) throw std::runtime_error("cannot write " + path_);
    out << export_sdpa(exact);
  }
  NumericSolution sol;
  sol.y = read_sdpa_solution(path_ + ".sol");
  if (sol.y.size() != exact.dimension()) {
    throw std::runtime_error(path_ + ".sol has " + std::to_string(sol.y.size()) + " values, expected " +
                             std::to_string(exact.dimension()));
  }
  sol.block_min_eigenvalues = block_min_eigenvalues(compressed, sol.y);
  sol.t = sol.min_eigenvalue();
  sol.t_history.push_back(sol.t);
  return sol;
}

}  // namespace psatz
