#include "psatz/driver.hpp"

#include "psatz/newton.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace psatz {

namespace {

void say(const SearchConfig& config, const std::string& msg) {
  if (config.log) config.log(msg);
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

SdpSolver& solver_of(const SearchConfig& config, std::unique_ptr<SdpSolver>& fallback) {
  if (config.solver) return *config.solver;
  fallback = std::make_unique<InternalSolver>(config.solver_options);
  return *fallback;
}

struct ExactCheck {
  std::vector<SosDecomposition> blocks;
  std::vector<std::size_t> failing;
};

ExactCheck check_blocks(const SdpSearchSpace& space, const RationalVector& packed, const std::vector<QMatrix>& compressors,
                        const SearchConfig& config) {
  ExactCheck out;
  for (std::size_t b = 0; b < space.blocks.num_blocks(); ++b) {
    const QMatrix q = space.block_of(packed, b);
    const bool numeric_ok = psd_precheck_numeric(q, compressors[b], config.precheck_tolerance);
    auto res = gaussian_decompose(q);
    if (auto* sos = std::get_if<SosDecomposition>(&res)) {
      if (!numeric_ok) say(config, "  block " + std::to_string(b) + ": numeric pre-check rejected an exactly PSD block");
      out.blocks.push_back(std::move(*sos));
    } else {
      out.blocks.emplace_back();
      out.failing.push_back(b);
    }
  }
  return out;
}

double space_scale(const FloatSpace& fs, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t b = 0; b < fs.num_blocks(); ++b) s = std::max(s, fs.evaluate(y, b).norm());
  return std::max(s, 1.0);
}

struct RoundOutcome {
  std::optional<PsdPoint> point;
  std::vector<std::size_t> failing;
};

RoundOutcome round_and_check(const SdpSearchSpace& space, const NumericSolution& sol,
                             const std::vector<QMatrix>& compressors, const SearchConfig& config) {
  RoundOutcome out;
  Integer bound = config.initial_denominator;
  for (int attempt = 0; attempt < std::max(1, config.rounding_attempts); ++attempt, bound *= 2) {
    RationalVector y = round_to_rational(sol.y, bound);
    RationalVector packed = space.point(y);
    ExactCheck chk = check_blocks(space, packed, compressors, config);
    if (chk.failing.empty()) {
      out.point = PsdPoint{std::move(y), std::move(packed), std::move(chk.blocks), 0, {}};
      return out;
    }
    out.failing = std::move(chk.failing);
  }
  return out;
}

void maybe_simplify(const SdpSearchSpace& space, const NumericSolution& sol, const std::vector<QMatrix>& compressors,
                    const SearchConfig& config, PsdPoint& point) {
  const std::vector<double> v = float_point(space, sol.y);
  std::vector<SosDecomposition> blocks;
  auto accept = [&](const RationalVector& y) {
    ExactCheck chk = check_blocks(space, space.point(y), compressors, config);
    if (!chk.failing.empty()) return false;
    blocks = std::move(chk.blocks);
    return true;
  };
  auto y = simplify_with_schedule(space, v, accept);
  if (!y) {
    say(config, "  simplification found no PSD point; keeping the rounded solution");
    return;
  }
  point.y = *y;
  point.packed = space.point(*y);
  point.blocks = std::move(blocks);
  say(config, "  simplified coefficients by lattice reduction");
}

bool spot_check(const PsatzWitness& w, const ProblemFile& problem, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  for (int trial = 0; trial < 3; ++trial) {
    RationalVector pt(problem.vars.size());
    for (auto& x : pt) {
      x = Rational(num(rng), den(rng));
      x.canonicalize();
    }
    Rational total(problem.goal == GoalKind::Unsat ? 1 : 0);
    for (const WitnessPart& part : w.parts) {
      RationalVector mono;
      for (const Monomial& m : part.basis) mono.push_back(Polynomial::term(problem.vars, m, Rational(1)).evaluate(pt));
      Rational q(0);
      for (const SosTerm& t : part.multiplier.terms) {
        Rational lin(0);
        for (std::size_t k = 0; k < mono.size() && k < t.vector.size(); ++k) lin += t.vector[k] * mono[k];
        q += t.coefficient * lin * lin;
      }
      total += q * part.polynomial.evaluate(pt);
    }
    if (sgn(total) != 0) return false;
  }
  return true;
}

std::optional<SearchFailure> vet_witness(const PsatzWitness& w, const ProblemFile& problem, const SearchConfig& config) {
  if (!spot_check(w, problem, config.seed)) {
    return SearchFailure{SearchFailure::Exit::VerificationFailed, "witness failed a randomized evaluation check"};
  }
  const VerifyResult v = verify_witness(w, problem);
  if (!v) return SearchFailure{SearchFailure::Exit::VerificationFailed, "witness rejected: " + v.reason};
  return std::nullopt;
}

unsigned round_up_even(int d) { return static_cast<unsigned>(std::max(d, 0) + (std::max(d, 0) % 2)); }

// Subsets of {0..n-1} ordered by size, then lexicographically.
std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      out.push_back(idx);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

struct Attempt {
  SosProblem sos;
  std::vector<std::string> labels;
};

ProofResult run_attempt(const ProblemFile& problem, const Attempt& a, const SearchConfig& config,
                        std::optional<PsatzWitness> prefix_denominator = std::nullopt) {
  const SpaceResult sr = build_search_space(a.sos);
  if (const auto* inf = std::get_if<Infeasible>(&sr)) {
    say(config, "  " + inf->reason);
    return SearchFailure{SearchFailure::Exit::BasesTooSmall, inf->reason};
  }
  const auto& space = std::get<SdpSearchSpace>(sr);
  std::ostringstream msg;
  msg << "  blocks";
  for (std::size_t s : space.blocks.sizes) msg << ' ' << s;
  msg << ", search space dimension " << space.dimension();
  say(config, msg.str());
  PsdPointResult pr = find_rational_psd_point(space, config);
  if (auto* f = std::get_if<SearchFailure>(&pr)) return *f;
  PsatzWitness w = assemble_witness(problem, a.sos, a.labels, std::get<PsdPoint>(pr));
  if (prefix_denominator) {
    for (auto& part : prefix_denominator->parts) w.parts.insert(w.parts.begin(), part);
  }
  if (auto bad = vet_witness(w, problem, config)) return *bad;
  return w;
}

}  // namespace

std::string to_string(SearchFailure::Exit e) {
  switch (e) {
    case SearchFailure::Exit::BasesTooSmall: return "bases too small";
    case SearchFailure::Exit::NoNumericSolution: return "no numeric solution";
    case SearchFailure::Exit::RestrictionInfeasible: return "restriction infeasible";
    case SearchFailure::Exit::NoProgress: return "no progress";
    case SearchFailure::Exit::IterationCap: return "iteration cap";
    case SearchFailure::Exit::BoundExhausted: return "bound exhausted";
    case SearchFailure::Exit::VerificationFailed: return "verification failed";
  }
  return "unknown";
}

Rational best_rational_approximation(const Rational& x, const Integer& bound) {
  if (bound < 1) throw std::invalid_argument("denominator bound must be at least 1");
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational r = x;
  for (;;) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    const Integer p2 = a * p1 + p0;
    const Integer q2 = a * q1 + q0;
    if (q2 > bound) {
      const Integer t = (bound - q0) / q1;
      Rational conv(p1, q1);
      Rational semi(p0 + t * p1, q0 + t * q1);
      conv.canonicalize();
      semi.canonicalize();
      return abs(x - semi) < abs(x - conv) ? semi : conv;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const Rational frac = r - Rational(a);
    if (sgn(frac) == 0) {
      Rational out(p1, q1);
      out.canonicalize();
      return out;
    }
    r = 1 / frac;
  }
}

RationalVector round_to_rational(std::span<const double> y, const Integer& bound) {
  RationalVector out;
  out.reserve(y.size());
  for (double v : y) out.push_back(best_rational_approximation(from_double(v), bound));
  return out;
}

namespace {

// Lattice kernel candidates for one block. A candidate counts when its
// relative residual ||G w|| / (||G||_F ||w||) is below kernel_tolerance and
// its integer coefficients stay below kernel_max_coefficient; large-coefficient
// vectors with tiny residual are artefacts of the solver's finite accuracy.
// When alpha0 yields nothing, alpha is lowered by 1e3 up to twice.
std::vector<RationalVector> kernel_candidates(const Eigen::MatrixXd& g, const QMatrix& compressor, const SearchConfig& config) {
  const double gnorm = g.norm();
  KernelSearchOptions opts = config.kernel;
  for (int attempt = 0; attempt < 3; ++attempt, opts.alpha0 *= 1e-3) {
    const KernelCandidates cand = find_kernel_vectors(g, compressor, opts);
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < cand.v.size(); ++i) {
      double w2 = 0.0;
      double wmax = 0.0;
      for (const Integer& x : cand.w[i]) {
        const double d = x.get_d();
        w2 += d * d;
        wmax = std::max(wmax, std::abs(d));
      }
      if (wmax > config.kernel_max_coefficient) continue;
      if (cand.residual[i] <= config.kernel_tolerance * gnorm * std::sqrt(w2)) out.push_back(cand.v[i]);
    }
    if (!out.empty()) return out;
  }
  return {};
}

}  // namespace

PsdPointResult find_rational_psd_point(const SdpSearchSpace& space, const SearchConfig& config) {
  std::unique_ptr<SdpSolver> fallback;
  SdpSolver& solver = solver_of(config, fallback);
  SdpSearchSpace current = space;
  std::optional<std::vector<double>> warm;
  const std::size_t cap = space.dimension() + 5;
  std::vector<std::size_t> dims;

  for (std::size_t round = 0; round < cap; ++round) {
    dims.push_back(current.dimension());
    const std::vector<QMatrix> compressors = compressors_for(current);
    const FloatSpace fs = compress(current, compressors);
    const NumericSolution sol = solver.solve(current, fs, warm);
    {
      std::ostringstream msg;
      msg << "  round " << round + 1 << ": dimension " << current.dimension() << ", min eigenvalues";
      for (double e : sol.block_min_eigenvalues) msg << ' ' << (std::isinf(e) ? std::string("-") : fmt_double(e));
      msg << " (" << sol.iterations << " solver iterations)";
      say(config, msg.str());
    }
    const double scale = space_scale(fs, sol.y);
    if (sol.min_eigenvalue() < -config.infeasibility_tolerance * scale) {
      return SearchFailure{SearchFailure::Exit::NoNumericSolution,
                           "numeric solver found no PSD point (min eigenvalue " + fmt_double(sol.min_eigenvalue()) + ")"};
    }

    RoundOutcome ro = round_and_check(current, sol, compressors, config);
    if (ro.point) {
      ro.point->rounds = static_cast<int>(round) + 1;
      ro.point->dimensions = dims;
      if (config.simplify) maybe_simplify(current, sol, compressors, config, *ro.point);
      return *ro.point;
    }

    std::vector<KernelVector> kernel;
    for (std::size_t b : ro.failing) {
      for (RationalVector& v : kernel_candidates(fs.evaluate(sol.y, b), compressors[b], config)) kernel.push_back({b, std::move(v)});
    }
    say(config, "  " + std::to_string(ro.failing.size()) + " block(s) not PSD after rounding, " +
                    std::to_string(kernel.size()) + " kernel vector(s)");
    if (kernel.empty()) {
      return SearchFailure{SearchFailure::Exit::NoProgress, "no kernel vector candidates below tolerance"};
    }
    SpaceResult next = restrict_search_space(current, kernel);
    if (auto* inf = std::get_if<Infeasible>(&next)) {
      return SearchFailure{SearchFailure::Exit::RestrictionInfeasible,
                           inf->reason + " (no solution, or a numerically bad kernel vector)"};
    }
    auto& restricted = std::get<SdpSearchSpace>(next);
    if (restricted.dimension() >= current.dimension() && current.dimension() > 0) {
      return SearchFailure{SearchFailure::Exit::NoProgress, "kernel restriction did not lower the dimension"};
    }
    warm = warm_start_projection(sol.y, current, restricted);
    current = std::move(restricted);
  }
  return SearchFailure{SearchFailure::Exit::IterationCap, "iteration cap reached"};
}

PsdPointResult naive_rational_psd_point(const SdpSearchSpace& space, const SearchConfig& config) {
  std::unique_ptr<SdpSolver> fallback;
  SdpSolver& solver = solver_of(config, fallback);
  const std::vector<QMatrix> compressors = compressors_for(space);
  const FloatSpace fs = compress(space, compressors);
  const NumericSolution sol = solver.solve(space, fs, std::nullopt);
  RoundOutcome ro = round_and_check(space, sol, compressors, config);
  if (ro.point) {
    ro.point->rounds = 1;
    ro.point->dimensions = {space.dimension()};
    return *ro.point;
  }
  return SearchFailure{SearchFailure::Exit::NoProgress, "rounded numeric solution is not PSD"};
}

PsatzWitness assemble_witness(const ProblemFile& problem, const SosProblem& sos, const std::vector<std::string>& labels,
                              const PsdPoint& point) {
  PsatzWitness w;
  w.kind = problem.goal;
  w.vars = problem.vars;
  for (std::size_t b = 0; b < labels.size(); ++b) {
    if (point.blocks[b].empty() && labels[b] != "denominator") continue;
    w.parts.push_back(WitnessPart{labels[b], expected_part_polynomial(problem, labels[b]), sos.bases[b], point.blocks[b]});
  }
  return w;
}

ProofResult prove_unsat(const ProblemFile& problem, const SearchConfig& config) {
  if (problem.goal != GoalKind::Unsat) throw std::invalid_argument("prove_unsat needs an unsat goal");
  const std::size_t n = problem.constraints.size();
  if (n == 0) throw std::invalid_argument("prove_unsat needs at least one assumption");
  const Polynomial target = Polynomial::constant(problem.vars, Rational(-1));

  int maxdeg = 0;
  for (const auto& p : problem.constraints) maxdeg = std::max(maxdeg, p.degree());
  const unsigned start = round_up_even(maxdeg);
  const unsigned stop = std::max(start, config.max_degree);
  const std::size_t levels = config.use_products ? n : 1;

  SearchFailure last{SearchFailure::Exit::BoundExhausted, "no attempt made"};
  for (unsigned bound = start; bound <= stop; bound += 2) {
    for (std::size_t level = 1; level <= levels; ++level) {
      Attempt a;
      a.sos.vars = problem.vars;
      a.sos.target = target;
      std::vector<Polynomial> polys;
      std::vector<std::string> labels;
      for (const auto& subset : subsets_up_to(n, level)) {
        Polynomial prod = Polynomial::constant(problem.vars, Rational(1));
        for (std::size_t i : subset) prod = prod * problem.constraints[i];
        polys.push_back(std::move(prod));
        labels.push_back(subset_label(subset));
      }
      polys.push_back(Polynomial::constant(problem.vars, Rational(1)));
      labels.push_back("const");
      const auto bases = select_bases(polys, target, bound, false);
      for (std::size_t j = 0; j < polys.size(); ++j) {
        if (bases[j].empty()) continue;
        a.sos.multiplicands.push_back(polys[j]);
        a.sos.bases.push_back(bases[j]);
        a.labels.push_back(labels[j]);
      }
      say(config, "degree bound " + std::to_string(bound) + ", products of up to " + std::to_string(level) +
                      " assumption(s): " + std::to_string(a.labels.size()) + " multiplicands");
      ProofResult r = run_attempt(problem, a, config);
      if (std::holds_alternative<PsatzWitness>(r)) return r;
      last = std::get<SearchFailure>(r);
      say(config, "  failed: " + to_string(last.exit) + ": " + last.reason);
    }
  }
  return SearchFailure{SearchFailure::Exit::BoundExhausted,
                       "no witness up to degree bound " + std::to_string(stop) + " (last: " + last.reason + ")"};
}

namespace {

std::vector<Monomial> graded_basis(std::size_t nvars, int degree_room, bool homogeneous) {
  if (degree_room < 0) return {};
  if (homogeneous) {
    if (degree_room % 2 != 0) return {};
    return monomials_of_degree(nvars, static_cast<unsigned>(degree_room / 2), static_cast<unsigned>(degree_room / 2));
  }
  return monomials_of_degree(nvars, 0, static_cast<unsigned>(degree_room / 2));
}

}  // namespace

ProofResult prove_nonneg(const ProblemFile& problem, const SearchConfig& config, std::optional<QuotientDegrees> degrees) {
  if (problem.goal != GoalKind::Nonneg || !problem.target) throw std::invalid_argument("prove_nonneg needs a nonneg goal");
  const Polynomial& p = *problem.target;
  const std::size_t nvars = problem.vars.size();
  const Polynomial one = Polynomial::constant(problem.vars, Rational(1));

  WitnessPart unit_denominator{"denominator", p, {Monomial(nvars)}, SosDecomposition{{SosTerm{Rational(1), {Rational(1)}}}}};
  if (p.is_zero()) {
    PsatzWitness w{GoalKind::Nonneg, problem.vars, {unit_denominator}};
    if (auto bad = vet_witness(w, problem, config)) return *bad;
    return w;
  }

  bool homogeneous = p.is_homogeneous();
  for (const auto& c : problem.constraints) homogeneous = homogeneous && !c.is_zero() && c.is_homogeneous();
  const std::size_t n = problem.constraints.size();
  const std::size_t levels = n == 0 ? 0 : (config.use_products ? n : 1);
  const auto subsets = subsets_up_to(n, levels);
  const int half_p = (p.degree() + 1) / 2;

  std::vector<QuotientDegrees> schedule;
  if (degrees) {
    schedule.push_back(*degrees);
  } else {
    const unsigned top = std::max(round_up_even(p.degree()), config.max_degree) / 2;
    for (unsigned d1 = 0; d1 <= top; ++d1) schedule.push_back({d1, d1 + static_cast<unsigned>(half_p)});
  }

  SearchFailure last{SearchFailure::Exit::BoundExhausted, "no attempt made"};
  for (const auto& [d1, d2] : schedule) {
    Attempt a;
    a.sos.vars = problem.vars;
    const bool plain = d1 == 0 && !degrees;
    if (plain) {
      // Q_R = 1: Q_0 + sum Q_j T_j = P, with a Newton-polytope basis when unconstrained.
      a.sos.target = p;
      a.sos.multiplicands.push_back(one);
      a.sos.bases.push_back(n == 0 ? newton_halved_monomials(p, homogeneous)
                                   : graded_basis(nvars, 2 * static_cast<int>(d2), homogeneous));
      a.labels.push_back("numerator");
    } else {
      a.sos.target = Polynomial(problem.vars);
      a.sos.multiplicands.push_back(p);
      a.sos.bases.push_back(graded_basis(nvars, 2 * static_cast<int>(d1), homogeneous));
      a.labels.push_back("denominator");
      a.sos.multiplicands.push_back(-one);
      a.sos.bases.push_back(graded_basis(nvars, 2 * static_cast<int>(d2), homogeneous));
      a.labels.push_back("numerator");
      a.sos.unit_trace_block = 0;
    }
    for (const auto& subset : subsets) {
      Polynomial prod = one;
      for (std::size_t i : subset) prod = prod * problem.constraints[i];
      auto basis = graded_basis(nvars, 2 * static_cast<int>(d2) - prod.degree(), homogeneous);
      if (basis.empty()) continue;
      a.sos.multiplicands.push_back(plain ? prod : -prod);
      a.sos.bases.push_back(std::move(basis));
      a.labels.push_back(subset_label(subset));
    }
    if (a.sos.bases[0].empty() || (a.sos.bases.size() > 1 && a.sos.bases[1].empty())) {
      say(config, "quotient degrees (" + std::to_string(d1) + ", " + std::to_string(d2) + "): empty basis, skipped");
      continue;
    }
    say(config, plain ? std::string("plain SOS attempt")
                      : "quotient degrees (" + std::to_string(d1) + ", " + std::to_string(d2) + ")");
    std::optional<PsatzWitness> prefix;
    if (plain) prefix = PsatzWitness{GoalKind::Nonneg, problem.vars, {unit_denominator}};
    ProofResult r = run_attempt(problem, a, config, prefix);
    if (std::holds_alternative<PsatzWitness>(r)) return r;
    last = std::get<SearchFailure>(r);
    say(config, "  failed: " + to_string(last.exit) + ": " + last.reason);
  }
  return SearchFailure{SearchFailure::Exit::BoundExhausted, "no witness in the degree schedule (last: " + last.reason + ")"};
}

ProofResult prove(const ProblemFile& problem, const SearchConfig& config) {
  return problem.goal == GoalKind::Unsat ? prove_unsat(problem, config) : prove_nonneg(problem, config);
}

}  // namespace psatz
