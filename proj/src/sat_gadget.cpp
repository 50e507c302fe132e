#include "stabilis/sat_gadget.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stabilis {

void CnfFormula::validate() const {
  if (num_vars < 1) throw std::invalid_argument("cnf: at least one variable required");
  for (const auto& clause : clauses) {
    if (clause.empty()) throw std::invalid_argument("cnf: empty clause");
    for (int lit : clause) {
      const int var = std::abs(lit);
      if (lit == 0 || var > num_vars) {
        throw std::invalid_argument("cnf: literal out of range");
      }
      if (std::count(clause.begin(), clause.end(), -lit) > 0) {
        throw std::invalid_argument("cnf: tautological clause");
      }
      if (std::count(clause.begin(), clause.end(), lit) > 1) {
        throw std::invalid_argument("cnf: duplicate literal in clause");
      }
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  CnfFormula phi;
  int declared_clauses = -1;
  std::vector<int> current;
  bool header_seen = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (header_seen || !(ls >> fmt >> phi.num_vars >> declared_clauses) || fmt != "cnf" ||
          phi.num_vars < 1 || declared_clauses < 0) {
        throw std::invalid_argument("dimacs: malformed header");
      }
      header_seen = true;
      continue;
    }
    if (!header_seen) throw std::invalid_argument("dimacs: clause before header");
    ls.clear();
    ls.str(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw std::invalid_argument("dimacs: empty clause");
        // Reject tautologies, drop duplicate literals.
        std::vector<int> clause;
        for (int l : current) {
          if (std::count(clause.begin(), clause.end(), -l) > 0) {
            throw std::invalid_argument("dimacs: tautological clause");
          }
          if (std::count(clause.begin(), clause.end(), l) == 0) clause.push_back(l);
        }
        phi.clauses.push_back(std::move(clause));
        current.clear();
      } else {
        if (std::abs(lit) > phi.num_vars) {
          throw std::invalid_argument("dimacs: variable index out of range");
        }
        current.push_back(lit);
      }
    }
    if (ls.fail() && !ls.eof()) throw std::invalid_argument("dimacs: bad token");
  }
  if (!header_seen) throw std::invalid_argument("dimacs: missing header");
  if (!current.empty()) throw std::invalid_argument("dimacs: clause missing 0 terminator");
  if (declared_clauses != static_cast<int>(phi.clauses.size())) {
    throw std::invalid_argument("dimacs: clause count disagrees with header");
  }
  phi.validate();
  return phi;
}

std::vector<int> lit_set_variable(const CnfFormula& phi, int var) {
  if (var < 1 || var > phi.num_vars) {
    throw std::invalid_argument("lit_set: variable index out of range");
  }
  return {var, -var};
}

std::vector<int> lit_set_clause(const CnfFormula& phi, int clause_index) {
  if (clause_index < 0 || clause_index >= static_cast<int>(phi.clauses.size())) {
    throw std::invalid_argument("lit_set: clause index out of range");
  }
  return phi.clauses[clause_index];
}

ActionKind GadgetGame::kind_of(int action) const {
  const int n = num_vars();
  if (action < 0 || action >= num_actions()) {
    throw std::invalid_argument("gadget: action index out of range");
  }
  if (action < n) return ActionKind::variable;
  if (action < 3 * n) return ActionKind::literal;
  if (action < 3 * n + num_clauses()) return ActionKind::clause;
  return ActionKind::fallback;
}

int GadgetGame::variable_action(int var) const {
  if (var < 1 || var > num_vars()) throw std::invalid_argument("gadget: bad variable");
  return var - 1;
}

int GadgetGame::literal_action(int literal) const {
  const int var = std::abs(literal);
  if (literal == 0 || var > num_vars()) throw std::invalid_argument("gadget: bad literal");
  return num_vars() + 2 * (var - 1) + (literal < 0 ? 1 : 0);
}

int GadgetGame::clause_action(int clause_index) const {
  if (clause_index < 0 || clause_index >= num_clauses()) {
    throw std::invalid_argument("gadget: bad clause index");
  }
  return 3 * num_vars() + clause_index;
}

std::vector<int> GadgetGame::lit_set_of_action(int action) const {
  switch (kind_of(action)) {
    case ActionKind::variable:
      return lit_set_variable(formula, action + 1);
    case ActionKind::clause:
      return lit_set_clause(formula, action - 3 * num_vars());
    default:
      throw std::invalid_argument("lit_set: item must be a variable or a clause");
  }
}

namespace {

std::string literal_name(int lit) {
  return (lit > 0 ? "+x" : "-x") + std::to_string(std::abs(lit));
}

std::string clause_name(const std::vector<int>& clause) {
  std::string out = "(";
  for (std::size_t i = 0; i < clause.size(); ++i) {
    if (i) out += "|";
    out += (clause[i] > 0 ? "x" : "-x") + std::to_string(std::abs(clause[i]));
  }
  out += ")";
  return out;
}

}  // namespace

GadgetGame build_game(const CnfFormula& phi) {
  phi.validate();
  GadgetGame gg;
  gg.formula = phi;
  const int n = phi.num_vars;
  gg.beta = -Rational(n);

  for (int v = 1; v <= n; ++v) gg.action_names.push_back("x" + std::to_string(v));
  for (int v = 1; v <= n; ++v) {
    gg.action_names.push_back(literal_name(v));
    gg.action_names.push_back(literal_name(-v));
  }
  for (const auto& clause : phi.clauses) gg.action_names.push_back(clause_name(clause));
  gg.action_names.push_back("f");

  const int total = gg.num_actions();
  // action -> signed literal (0 for non-literal actions)
  std::vector<int> literal_of(total, 0);
  for (int v = 1; v <= n; ++v) {
    literal_of[gg.literal_action(v)] = v;
    literal_of[gg.literal_action(-v)] = -v;
  }
  // lit_sets for V and C actions
  std::vector<std::vector<int>> lit_sets(total);
  for (int v = 1; v <= n; ++v) lit_sets[gg.variable_action(v)] = lit_set_variable(phi, v);
  for (int c = 0; c < gg.num_clauses(); ++c) lit_sets[gg.clause_action(c)] = lit_set_clause(phi, c);

  auto contains = [](const std::vector<int>& set, int lit) {
    return std::find(set.begin(), set.end(), lit) != set.end();
  };

  const Rational rn(n);
  // u_0(a0, a1) by the six utility rules; u_1 follows from symmetry.
  auto u0 = [&](int a0, int a1) -> Rational {
    const ActionKind k0 = gg.kind_of(a0);
    const ActionKind k1 = gg.kind_of(a1);
    const bool vc0 = k0 == ActionKind::variable || k0 == ActionKind::clause;
    const bool vc1 = k1 == ActionKind::variable || k1 == ActionKind::clause;
    if (k0 == ActionKind::literal && k1 == ActionKind::literal) {
      return literal_of[a0] == -literal_of[a1] ? gg.beta : rn - 1;
    }
    if (vc0 && vc1) return gg.beta;
    if (vc0 && k1 == ActionKind::literal) {
      return contains(lit_sets[a0], literal_of[a1]) ? Rational(0) : rn;
    }
    if (k0 == ActionKind::literal && vc1) {
      return contains(lit_sets[a1], literal_of[a0]) ? Rational(2 * (rn - 1)) : Rational(rn - 2);
    }
    if (k0 == ActionKind::fallback) {
      if (k1 == ActionKind::fallback) return rn + 2;
      if (vc1) return rn;
      return rn - 1;  // a1 literal
    }
    // a1 = f
    return vc0 ? Rational(rn + 1) : Rational(rn - 1);
  };

  gg.game.num_players = 2;
  gg.game.action_counts = {total, total};
  gg.game.utilities.assign(2, std::vector<Rational>(static_cast<std::size_t>(total) * total));
  for (int a0 = 0; a0 < total; ++a0) {
    for (int a1 = 0; a1 < total; ++a1) {
      const std::size_t idx = static_cast<std::size_t>(a0) * total + a1;
      gg.game.utilities[0][idx] = u0(a0, a1);
      gg.game.utilities[1][idx] = u0(a1, a0);
    }
  }
  return gg;
}

MixedProfile assignment_to_profile(const GadgetGame& gg, std::span<const int> assignment) {
  const int n = gg.num_vars();
  if (static_cast<int>(assignment.size()) != n) {
    throw std::invalid_argument("assignment: exactly one literal per variable required");
  }
  std::vector<bool> seen(n + 1, false);
  for (int lit : assignment) {
    const int var = std::abs(lit);
    if (lit == 0 || var > n) throw std::invalid_argument("assignment: literal out of range");
    if (seen[var]) throw std::invalid_argument("assignment: contradictory or duplicate variable");
    seen[var] = true;
  }
  std::vector<Rational> strat(gg.num_actions(), Rational(0));
  const Rational share = make_rational(1, n);
  for (int lit : assignment) strat[gg.literal_action(lit)] = share;
  MixedProfile x;
  x.strategies = {strat, strat};
  return x;
}

}  // namespace stabilis
