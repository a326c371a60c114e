#include "psatz/witness.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace psatz {

namespace {

std::vector<std::size_t> parse_subset_label(std::string_view label, std::size_t count) {
  std::vector<std::size_t> idx;
  std::size_t start = 0;
  while (start <= label.size()) {
    const auto star = label.find('*', start);
    const std::string_view tok = label.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v == 0 || v > count) {
      throw std::invalid_argument("invalid part label '" + std::string(label) + "'");
    }
    if (!idx.empty() && v - 1 <= idx.back()) {
      throw std::invalid_argument("part label '" + std::string(label) + "' is not strictly increasing");
    }
    idx.push_back(v - 1);
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  return idx;
}

VerifyResult reject(std::string reason) { return {false, std::move(reason)}; }

}  // namespace

Polynomial subset_product(const ProblemFile& problem, std::string_view label) {
  Polynomial p = Polynomial::constant(problem.vars, Rational(1));
  for (std::size_t i : parse_subset_label(label, problem.constraints.size())) p = p * problem.constraints[i];
  return p;
}

std::string subset_label(std::span<const std::size_t> indices) {
  std::string out;
  for (std::size_t i : indices) {
    if (!out.empty()) out += '*';
    out += std::to_string(i + 1);
  }
  return out;
}

Polynomial expected_part_polynomial(const ProblemFile& problem, std::string_view label) {
  if (problem.goal == GoalKind::Unsat) {
    if (label == "const") return Polynomial::constant(problem.vars, Rational(1));
    return subset_product(problem, label);
  }
  if (label == "denominator") return *problem.target;
  if (label == "numerator") return Polynomial::constant(problem.vars, Rational(-1));
  return -subset_product(problem, label);
}

VerifyResult verify_witness(const PsatzWitness& w, const ProblemFile& problem) {
  if (w.kind != problem.goal) return reject("witness kind does not match the goal");
  if (w.vars != problem.vars) return reject("witness variables do not match the problem");
  if (w.parts.empty()) return reject("witness has no parts");

  std::set<std::string> labels;
  bool has_denominator = false;
  for (const WitnessPart& part : w.parts) {
    if (!labels.insert(part.label).second) return reject("duplicate part '" + part.label + "'");
    Polynomial expected(problem.vars);
    try {
      expected = expected_part_polynomial(problem, part.label);
    } catch (const std::invalid_argument& e) {
      return reject(e.what());
    }
    if (part.polynomial != expected) return reject("part polynomial does not match problem (part " + part.label + ")");
    has_denominator = has_denominator || part.label == "denominator";
    for (const Monomial& m : part.basis) {
      if (m.size() != problem.vars.size()) return reject("basis monomial has wrong variable count (part " + part.label + ")");
    }
    for (const SosTerm& t : part.multiplier.terms) {
      if (sgn(t.coefficient) <= 0) return reject("nonpositive square coefficient (part " + part.label + ")");
      if (t.vector.size() != part.basis.size()) return reject("vector length does not match basis (part " + part.label + ")");
    }
  }
  if (problem.goal == GoalKind::Nonneg && !has_denominator) return reject("missing denominator part");

  Polynomial total = Polynomial::constant(problem.vars, Rational(problem.goal == GoalKind::Unsat ? 1 : 0));
  for (const WitnessPart& part : w.parts) {
    const Polynomial q = expand_sos(part.multiplier, part.basis, problem.vars);
    if (part.label == "denominator" && q.is_zero()) return reject("denominator multiplier is zero");
    total += q * part.polynomial;
  }
  if (!total.is_zero()) {
    std::string residual = total.to_string();
    if (residual.size() > 120) residual = residual.substr(0, 117) + "...";
    return reject("identity does not reduce to zero (residual " + residual + ")");
  }
  return {true, {}};
}

}  // namespace psatz
