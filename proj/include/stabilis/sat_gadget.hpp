#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabilis/game.hpp"
#include "stabilis/rational.hpp"

namespace stabilis {

// CNF formula over variables 1..num_vars; literals are signed indices.
// Clauses are deduplicated and never tautological (a clause containing both
// +x and -x is rejected at parse time).
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const;  // throws std::invalid_argument
};

CnfFormula parse_dimacs(std::string_view text);

// LitSet over V: {+x, -x}.
std::vector<int> lit_set_variable(const CnfFormula& phi, int var);
// LitSet over C: the clause's literals.
std::vector<int> lit_set_clause(const CnfFormula& phi, int clause_index);

enum class ActionKind { variable, literal, clause, fallback };

// The symmetric two-player game G(phi) over the action alphabet
// Sigma = V + L + C + {f}, laid out as: variables ascending, then literals
// +x1,-x1,...,+xn,-xn, then clauses in input order, then f.
struct GadgetGame {
  Game game;
  CnfFormula formula;
  Rational beta;  // fixed to -n
  std::vector<std::string> action_names;

  int num_vars() const { return formula.num_vars; }
  int num_clauses() const { return static_cast<int>(formula.clauses.size()); }
  int num_actions() const { return 3 * num_vars() + num_clauses() + 1; }

  ActionKind kind_of(int action) const;
  int variable_action(int var) const;      // var in 1..n
  int literal_action(int literal) const;   // signed index
  int clause_action(int clause_index) const;
  int default_action() const { return num_actions() - 1; }

  // LitSet addressed by action index; throws for literal or f actions.
  std::vector<int> lit_set_of_action(int action) const;
};

GadgetGame build_game(const CnfFormula& phi);

// Both players uniform over the assignment's literal actions. The
// assignment must pick exactly one literal per variable.
MixedProfile assignment_to_profile(const GadgetGame& gg, std::span<const int> assignment);

}  // namespace stabilis
