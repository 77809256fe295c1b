#ifndef PBRACK_PARSER_HPP
#define PBRACK_PARSER_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pbrack/expr.hpp"

namespace pbrack {

// One session command. Expressions in command arguments are parsed
// syntactically at script-parse time; their names resolve when the command
// executes, so an unknown name inside a command is a command error, not a
// script error.
struct Command {
  enum class Kind { Bracket, Commutator, Diff, Simplify, Closure, Check };

  Kind kind;
  std::size_t line = 0;
  std::string text;  // the script line, echoed into reports

  ExprPtr lhs, rhs;
  std::string lhs_text, rhs_text;

  std::string var;  // diff

  std::vector<std::string> scalars, generators;  // closure
  int degree = 2;
  int hbar_max = 2;

  ExprPtr expected;  // check: optional override of the engine's own bracket
  std::string expected_text;
  int trials = 100;
  double tolerance = 1e-6;
};

struct SessionScript {
  PhaseSpace space;
  std::vector<std::pair<std::string, ExprPtr>> definitions;
  std::vector<Command> commands;
};

// Standard precedence: + - below * / below ^ (right-associative, binding
// tighter than unary minus). Integer exponents only; `sqrt`/`exp` are the only
// call forms; `I` is the imaginary unit and `hbar` is reserved. No implicit
// multiplication.
ExprPtr parse_expression(const std::string& text, const PhaseSpace& space,
                         const std::set<std::string>& known_names = {});

SessionScript parse_session(const std::string& text);

}  // namespace pbrack

#endif
