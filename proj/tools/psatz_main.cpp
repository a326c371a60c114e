// psatz: search for and check Positivstellensatz certificates.
//
//   psatz run problem.txt -o problem.cert
//   psatz check problem.cert

#include "psatz/certificate.hpp"
#include "psatz/driver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kFound = 0;
constexpr int kExhausted = 1;
constexpr int kInputError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct RunOptions {
  std::string problem_path;
  std::string output_path;
  unsigned max_degree = 0;
  bool use_products = false;
  std::string solver = "internal";
  bool simplify = false;
  double alpha0 = 1e15;
  double beta = 10.0;
  double gamma = 10.0;
  std::uint64_t seed = 1;
  std::vector<unsigned> degrees;
  bool quiet = false;
};

int do_run(const RunOptions& opt) {
  psatz::ProblemFile problem;
  try {
    problem = psatz::parse_problem(slurp(opt.problem_path));
  } catch (const std::exception& e) {
    std::cerr << opt.problem_path << ": " << e.what() << "\n";
    return kInputError;
  }

  psatz::SearchConfig config;
  config.max_degree = opt.max_degree;
  config.use_products = opt.use_products;
  config.simplify = opt.simplify;
  config.kernel = {opt.alpha0, opt.beta, opt.gamma};
  config.seed = opt.seed;
  if (opt.solver.rfind("sdpa-file:", 0) == 0) {
    config.solver = std::make_shared<psatz::SdpaFileSolver>(opt.solver.substr(10));
  } else if (opt.solver != "internal") {
    std::cerr << "unknown solver '" << opt.solver << "'\n";
    return kInputError;
  }
  if (!opt.quiet) config.log = [](const std::string& m) { std::cerr << m << "\n"; };

  std::optional<psatz::QuotientDegrees> degrees;
  if (!opt.degrees.empty()) {
    if (opt.degrees.size() != 2 || problem.goal != psatz::GoalKind::Nonneg) {
      std::cerr << "--degrees takes two values and applies to nonneg goals only\n";
      return kInputError;
    }
    degrees = psatz::QuotientDegrees{opt.degrees[0], opt.degrees[1]};
  }

  psatz::ProofResult result;
  try {
    result = problem.goal == psatz::GoalKind::Nonneg ? psatz::prove_nonneg(problem, config, degrees)
                                                     : psatz::prove_unsat(problem, config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExhausted;
  }

  if (const auto* f = std::get_if<psatz::SearchFailure>(&result)) {
    std::cerr << "no witness: " << psatz::to_string(f->exit) << ": " << f->reason << "\n";
    return kExhausted;
  }
  const psatz::Certificate cert{problem, std::get<psatz::PsatzWitness>(result)};
  const std::string text = psatz::write_certificate(cert);
  if (opt.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output_path);
    if (!out) {
      std::cerr << "cannot write " << opt.output_path << "\n";
      return kInputError;
    }
    out << text;
  }
  if (!opt.quiet) std::cerr << "witness verified\n";
  return kFound;
}

int do_check(const std::string& path) {
  psatz::Certificate cert;
  try {
    cert = psatz::parse_certificate(slurp(path));
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kInputError;
  }
  const psatz::VerifyResult r = psatz::check_certificate(cert);
  if (!r) {
    std::cout << "REJECT: " << r.reason << "\n";
    return 1;
  }
  std::cout << "ACCEPT\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Find and check rational sums-of-squares certificates"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "search for a witness and write a certificate");
  run_cmd->add_option("problem", run.problem_path, "problem file")->required();
  run_cmd->add_option("-o,--output", run.output_path, "certificate path (stdout when omitted)");
  run_cmd->add_option("--max-degree", run.max_degree, "largest multiplier degree to try");
  run_cmd->add_flag("--use-products", run.use_products, "also use square-free products of assumptions");
  run_cmd->add_option("--solver", run.solver, "internal | sdpa-file:<path>");
  run_cmd->add_flag("--simplify", run.simplify, "shrink coefficients by lattice reduction");
  run_cmd->add_option("--alpha0", run.alpha0, "kernel lattice scale");
  run_cmd->add_option("--beta", run.beta, "kernel vector size filter");
  run_cmd->add_option("--gamma", run.gamma, "kernel vector residual filter");
  run_cmd->add_option("--seed", run.seed, "seed for randomized identity spot checks");
  run_cmd->add_option("--degrees", run.degrees, "nonneg only: monomial degrees d1 d2 of Q1 and Q2")->expected(2);
  run_cmd->add_flag("-q,--quiet", run.quiet, "no progress log");

  std::string cert_path;
  auto* check_cmd = app.add_subcommand("check", "verify a certificate");
  check_cmd->add_option("certificate", cert_path, "certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (*run_cmd) return do_run(run);
  return do_check(cert_path);
}
