#pragma once

#include "psatz/polynomial.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psatz {

/// Malformed problem or certificate text. The message carries the position.
class InputError : public std::runtime_error {
 public:
  InputError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class GoalKind { Unsat, Nonneg };

/// A system of constraints P_i >= 0 and a goal: refute the system, or show
/// that `target` is nonnegative wherever the constraints hold.
struct ProblemFile {
  VariableList vars;
  std::vector<Polynomial> constraints;
  GoalKind goal = GoalKind::Unsat;
  std::optional<Polynomial> target;
};

/// Grammar, one statement per line, `#` starts a comment:
///   vars <id>+
///   assume <poly> >= 0
///   goal unsat | goal nonneg <poly>
ProblemFile parse_problem(std::string_view text);

/// Canonical text of `p` in the same grammar.
std::string format_problem(const ProblemFile& p);

namespace detail {

struct ProblemParseState {
  ProblemFile problem;
  bool have_vars = false;
  bool have_goal = false;
};

/// Consumes one statement line; returns false when the first keyword is not
/// a problem keyword (the line is left for the caller).
bool apply_problem_line(ProblemParseState& state, std::string_view line, int lineno);

/// Checks that a goal was given; throws InputError otherwise.
void finish_problem(const ProblemParseState& state, int lineno);

std::string_view strip_comment(std::string_view line);
std::string_view trim(std::string_view s);

}  // namespace detail

}  // namespace psatz
