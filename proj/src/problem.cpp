#include "psatz/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace psatz {

namespace detail {

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

namespace {

std::pair<std::string_view, std::string_view> split_keyword(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  return {line.substr(0, i), trim(line.substr(i))};
}

bool valid_identifier(std::string_view id) {
  if (id.empty() || !(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_')) return false;
  return std::all_of(id.begin(), id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

Polynomial parse_poly_at(std::string_view text, const VariableList& vars, int lineno) {
  try {
    return Polynomial::parse(text, vars);
  } catch (const std::invalid_argument& e) {
    throw InputError(lineno, e.what());
  }
}

}  // namespace

bool apply_problem_line(ProblemParseState& state, std::string_view line, int lineno) {
  auto [kw, rest] = split_keyword(line);
  if (kw == "vars") {
    if (state.have_vars) throw InputError(lineno, "duplicate vars declaration");
    std::istringstream in{std::string(rest)};
    std::string id;
    while (in >> id) {
      if (!valid_identifier(id)) throw InputError(lineno, "invalid variable name '" + id + "'");
      if (std::find(state.problem.vars.begin(), state.problem.vars.end(), id) != state.problem.vars.end()) {
        throw InputError(lineno, "variable " + id + " declared twice");
      }
      state.problem.vars.push_back(id);
    }
    if (state.problem.vars.empty()) throw InputError(lineno, "vars declaration lists no variables");
    state.have_vars = true;
    return true;
  }
  if (kw == "assume") {
    const auto rel = rest.rfind(">=");
    if (rel == std::string_view::npos) throw InputError(lineno, "expected '<poly> >= 0'");
    if (trim(rest.substr(rel + 2)) != "0") throw InputError(lineno, "right-hand side of '>=' must be 0");
    state.problem.constraints.push_back(parse_poly_at(trim(rest.substr(0, rel)), state.problem.vars, lineno));
    return true;
  }
  if (kw == "goal") {
    if (state.have_goal) throw InputError(lineno, "more than one goal");
    auto [kind, body] = split_keyword(rest);
    if (kind == "unsat") {
      if (!body.empty()) throw InputError(lineno, "unexpected text after 'goal unsat'");
      state.problem.goal = GoalKind::Unsat;
    } else if (kind == "nonneg") {
      if (body.empty()) throw InputError(lineno, "'goal nonneg' needs a polynomial");
      state.problem.goal = GoalKind::Nonneg;
      state.problem.target = parse_poly_at(body, state.problem.vars, lineno);
    } else {
      throw InputError(lineno, "unknown goal '" + std::string(kind) + "'");
    }
    state.have_goal = true;
    return true;
  }
  return false;
}

void finish_problem(const ProblemParseState& state, int lineno) {
  if (!state.have_goal) throw InputError(lineno, "missing goal");
  if (state.problem.goal == GoalKind::Unsat && state.problem.constraints.empty()) {
    throw InputError(lineno, "'goal unsat' needs at least one assumption");
  }
}

}  // namespace detail

ProblemFile parse_problem(std::string_view text) {
  detail::ProblemParseState state;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const std::string_view raw = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    ++lineno;
    const std::string_view line = detail::trim(detail::strip_comment(raw));
    if (!line.empty() && !detail::apply_problem_line(state, line, lineno)) {
      throw InputError(lineno, "unknown statement '" + std::string(line.substr(0, line.find(' '))) + "'");
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  detail::finish_problem(state, lineno);
  return state.problem;
}

std::string format_problem(const ProblemFile& p) {
  std::string out = "vars";
  for (const auto& v : p.vars) out += " " + v;
  out += "\n";
  for (const auto& c : p.constraints) out += "assume " + c.to_string() + " >= 0\n";
  if (p.goal == GoalKind::Unsat) {
    out += "goal unsat\n";
  } else {
    out += "goal nonneg " + p.target->to_string() + "\n";
  }
  return out;
}

}  // namespace psatz
