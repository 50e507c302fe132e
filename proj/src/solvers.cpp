#include "stabilis/solvers.hpp"

#include <algorithm>
#include <cstdint>

#include "stabilis/lp.hpp"
#include "stabilis/stability.hpp"

namespace stabilis {

namespace {

// Lexicographic successor of a k-combination of {0..n-1}; false when done.
bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  return comb;
}

// Per-side comparison masks over opponent columns, used for two prunes:
//  - an action in the candidate support strictly dominated (given the
//    opponent support) by any action cannot be a best response;
//  - two support actions where one weakly dominates the other with a strict
//    column cannot be indifferent against a full-support opponent mixture.
// Masks need the opponent action count to fit a word; larger games skip the
// prunes and let the solvers decide.
struct CompareMasks {
  int n = 0;
  std::vector<std::uint64_t> gt, ge;  // [a * n + a']: cols with u[a] >/>= u[a']

  explicit CompareMasks(const std::vector<std::vector<Rational>>& u) {
    n = static_cast<int>(u.size());
    const int cols = static_cast<int>(u[0].size());
    if (cols > 64) return;
    gt.assign(static_cast<std::size_t>(n) * n, 0);
    ge.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) {
      for (int ap = 0; ap < n; ++ap) {
        if (a == ap) continue;
        std::uint64_t m_gt = 0, m_ge = 0;
        for (int c = 0; c < cols; ++c) {
          const Cmp cmp = compare(u[a][c], u[ap][c]);
          if (cmp != Cmp::lt) m_ge |= (std::uint64_t{1} << c);
          if (cmp == Cmp::gt) m_gt |= (std::uint64_t{1} << c);
        }
        gt[static_cast<std::size_t>(a) * n + ap] = m_gt;
        ge[static_cast<std::size_t>(a) * n + ap] = m_ge;
      }
    }
  }

  bool enabled() const { return !gt.empty(); }

  bool support_dominated(const std::vector<int>& own, std::uint64_t opp_mask) const {
    for (int a : own) {
      for (int ap = 0; ap < n; ++ap) {
        if (ap == a) continue;
        if ((gt[static_cast<std::size_t>(ap) * n + a] & opp_mask) == opp_mask) return true;
      }
    }
    return false;
  }

  bool indifference_impossible(const std::vector<int>& own, std::uint64_t opp_mask) const {
    for (std::size_t i = 0; i < own.size(); ++i) {
      for (std::size_t j = i + 1; j < own.size(); ++j) {
        const std::size_t ij = static_cast<std::size_t>(own[i]) * n + own[j];
        const std::size_t ji = static_cast<std::size_t>(own[j]) * n + own[i];
        if ((ge[ij] & opp_mask) == opp_mask && (gt[ij] & opp_mask) != 0) return true;
        if ((ge[ji] & opp_mask) == opp_mask && (gt[ji] & opp_mask) != 0) return true;
      }
    }
    return false;
  }
};

std::uint64_t mask_of(const std::vector<int>& support) {
  std::uint64_t m = 0;
  for (int c : support) {
    if (c < 64) m |= (std::uint64_t{1} << c);
  }
  return m;
}

enum class LinForm { inconsistent, unique, underdetermined };

struct GaussResult {
  LinForm form = LinForm::inconsistent;
  std::vector<Rational> solution;
};

// Exact Gauss-Jordan on an augmented system (last column = rhs).
GaussResult solve_linear(std::vector<std::vector<Rational>> aug, int unknowns) {
  const int rows = static_cast<int>(aug.size());
  int rank = 0;
  std::vector<int> pivot_cols;
  for (int col = 0; col < unknowns && rank < rows; ++col) {
    int pr = -1;
    for (int r = rank; r < rows; ++r) {
      if (aug[r][col] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(aug[rank], aug[pr]);
    const Rational piv = aug[rank][col];
    for (int c = col; c <= unknowns; ++c) {
      if (aug[rank][c] != 0) aug[rank][c] /= piv;
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      const Rational factor = aug[r][col];
      for (int c = col; c <= unknowns; ++c) {
        if (aug[rank][c] != 0) aug[r][c] -= factor * aug[rank][c];
      }
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (int r = rank; r < rows; ++r) {
    if (aug[r][unknowns] != 0) return {LinForm::inconsistent, {}};
  }
  if (rank < unknowns) return {LinForm::underdetermined, {}};
  GaussResult res;
  res.form = LinForm::unique;
  res.solution.resize(unknowns);
  for (int r = 0; r < rank; ++r) res.solution[pivot_cols[r]] = aug[r][unknowns];
  return res;
}

struct SideSolution {
  std::vector<Rational> strategy;  // full-length opponent vector
  Rational payoff;                 // the support player's best-response value
  bool via_lp = false;             // underdetermined system, solved by LP
};

// Constraints making every action of `own` an exact best response to an
// opponent mixture carried strictly on `opp`. U rows are the support
// player's actions, columns the opponent's. Variables: x_c (c in opp), w
// free, plus delta when maximize_interior.
LinearProgram side_program(const std::vector<std::vector<Rational>>& u,
                           const std::vector<int>& own, const std::vector<int>& opp,
                           bool maximize_interior) {
  const int n_own = static_cast<int>(u.size());
  const int k = static_cast<int>(opp.size());
  const int nvars = k + 1 + (maximize_interior ? 1 : 0);
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(nvars, Rational(0));
  if (maximize_interior) lp.objective[k + 1] = 1;
  lp.bounds.assign(nvars, VarBound{});
  lp.bounds[k] = VarBound{std::nullopt, std::nullopt};  // w free

  std::vector<bool> in_own(n_own, false);
  for (int a : own) in_own[a] = true;
  for (int a = 0; a < n_own; ++a) {
    Constraint con;
    con.coeffs.assign(nvars, Rational(0));
    for (int i = 0; i < k; ++i) con.coeffs[i] = u[a][opp[i]];
    con.coeffs[k] = -1;
    con.rel = in_own[a] ? Relation::eq : Relation::le;
    con.rhs = 0;
    lp.constraints.push_back(std::move(con));
  }
  Constraint sum;
  sum.coeffs.assign(nvars, Rational(0));
  for (int i = 0; i < k; ++i) sum.coeffs[i] = 1;
  sum.rel = Relation::eq;
  sum.rhs = 1;
  lp.constraints.push_back(std::move(sum));
  if (maximize_interior) {
    for (int i = 0; i < k; ++i) {
      Constraint interior;
      interior.coeffs.assign(nvars, Rational(0));
      interior.coeffs[i] = 1;
      interior.coeffs[k + 1] = -1;
      interior.rel = Relation::ge;
      interior.rhs = 0;
      lp.constraints.push_back(std::move(interior));
    }
  }
  return lp;
}

std::optional<SideSolution> solve_side(const std::vector<std::vector<Rational>>& u,
                                       const std::vector<int>& own,
                                       const std::vector<int>& opp, int opp_actions) {
  const int n_own = static_cast<int>(u.size());
  const int k = static_cast<int>(opp.size());
  std::vector<bool> in_own(n_own, false);
  for (int a : own) in_own[a] = true;

  // Point-mass opponent: the support must sit inside the column's argmax.
  if (k == 1) {
    const int c = opp[0];
    const Rational& w = u[own[0]][c];
    for (int a : own) {
      if (u[a][c] != w) return std::nullopt;
    }
    for (int a = 0; a < n_own; ++a) {
      if (u[a][c] > w) return std::nullopt;
    }
    SideSolution sol;
    sol.strategy.assign(opp_actions, Rational(0));
    sol.strategy[c] = 1;
    sol.payoff = w;
    return sol;
  }

  // Indifference system over the opponent support. A unique solution
  // settles the side by direct substitution; only rank-deficient systems
  // fall through to the interior-maximizing LP.
  std::vector<std::vector<Rational>> aug;
  for (std::size_t i = 1; i < own.size(); ++i) {
    std::vector<Rational> row(k + 1, Rational(0));
    for (int c = 0; c < k; ++c) row[c] = u[own[0]][opp[c]] - u[own[i]][opp[c]];
    aug.push_back(std::move(row));
  }
  aug.emplace_back(k + 1, Rational(1));  // sum(x) = 1
  const GaussResult sys = solve_linear(std::move(aug), k);

  if (sys.form == LinForm::inconsistent) return std::nullopt;
  if (sys.form == LinForm::unique) {
    for (const auto& v : sys.solution) {
      if (v <= 0) return std::nullopt;
    }
    Rational w(0);
    for (int c = 0; c < k; ++c) w += u[own[0]][opp[c]] * sys.solution[c];
    for (int a = 0; a < n_own; ++a) {
      if (in_own[a]) continue;
      Rational val(0);
      for (int c = 0; c < k; ++c) val += u[a][opp[c]] * sys.solution[c];
      if (val > w) return std::nullopt;
    }
    SideSolution sol;
    sol.strategy.assign(opp_actions, Rational(0));
    for (int c = 0; c < k; ++c) sol.strategy[opp[c]] = sys.solution[c];
    sol.payoff = std::move(w);
    return sol;
  }

  const LpOutcome outcome = simplex_solve(side_program(u, own, opp, true));
  if (outcome.status != LpStatus::optimal || outcome.point[k + 1] == 0) {
    return std::nullopt;
  }
  SideSolution sol;
  sol.strategy.assign(opp_actions, Rational(0));
  for (int i = 0; i < k; ++i) sol.strategy[opp[i]] = outcome.point[i];
  sol.payoff = outcome.point[k];
  sol.via_lp = true;
  return sol;
}

// True when the closed solution polytope of the side system contains more
// than one opponent mixture, i.e. the support pair carries a continuum.
bool side_has_slack(const std::vector<std::vector<Rational>>& u,
                    const std::vector<int>& own, const std::vector<int>& opp) {
  LinearProgram lp = side_program(u, own, opp, false);
  const int k = static_cast<int>(opp.size());
  for (int i = 0; i < k; ++i) {
    std::fill(lp.objective.begin(), lp.objective.end(), Rational(0));
    lp.objective[i] = 1;
    lp.sense = Sense::maximize;
    const LpOutcome hi = simplex_solve(lp);
    lp.sense = Sense::minimize;
    const LpOutcome lo = simplex_solve(lp);
    if (hi.status != LpStatus::optimal || lo.status != LpStatus::optimal) continue;
    if (hi.value != lo.value) return true;
  }
  return false;
}

}  // namespace

void for_each_nash(const Game& g, int max_support,
                   const std::function<bool(const NashWitness&)>& visit) {
  if (g.num_players != 2) {
    throw std::invalid_argument("for_each_nash: two-player games only");
  }
  g.validate();
  const auto m0 = g.payoff_matrix(0);
  const auto m1 = g.payoff_matrix(1);
  // Player 1's best-response view: her actions as rows.
  std::vector<std::vector<Rational>> m1t(g.action_counts[1],
                                         std::vector<Rational>(g.action_counts[0]));
  for (int r = 0; r < g.action_counts[0]; ++r) {
    for (int c = 0; c < g.action_counts[1]; ++c) m1t[c][r] = m1[r][c];
  }
  const CompareMasks cmp0(m0);
  const CompareMasks cmp1(m1t);

  const int n0 = g.action_counts[0];
  const int n1 = g.action_counts[1];
  const int cap0 = (max_support <= 0) ? n0 : std::min(max_support, n0);
  const int cap1 = (max_support <= 0) ? n1 : std::min(max_support, n1);

  for (int s0 = 1; s0 <= cap0; ++s0) {
    for (int s1 = 1; s1 <= cap1; ++s1) {
      std::vector<int> sup0 = first_combination(s0);
      do {
        const std::uint64_t mask0 = mask_of(sup0);
        std::vector<int> sup1 = first_combination(s1);
        do {
          const std::uint64_t mask1 = mask_of(sup1);
          if (cmp0.enabled() && cmp1.enabled()) {
            if (cmp0.support_dominated(sup0, mask1)) continue;
            if (cmp1.support_dominated(sup1, mask0)) continue;
            if (cmp0.indifference_impossible(sup0, mask1)) continue;
            if (cmp1.indifference_impossible(sup1, mask0)) continue;
          }
          const auto side_a = solve_side(m0, sup0, sup1, n1);
          if (!side_a) continue;
          const auto side_b = solve_side(m1t, sup1, sup0, n0);
          if (!side_b) continue;
          NashWitness w;
          w.profile.strategies = {side_b->strategy, side_a->strategy};
          w.supports = {sup0, sup1};
          w.payoffs = expected_utilities(g, w.profile);
          w.degenerate = (side_a->via_lp && side_has_slack(m0, sup0, sup1)) ||
                         (side_b->via_lp && side_has_slack(m1t, sup1, sup0));
          if (!visit(w)) return;
        } while (next_combination(sup1, n1));
      } while (next_combination(sup0, n0));
    }
  }
}

std::vector<NashWitness> enumerate_nash(const Game& g, int max_support) {
  std::vector<NashWitness> out;
  for_each_nash(g, max_support, [&](const NashWitness& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::optional<NashWitness> find_envy_proof_nash(const Game& g, int max_support) {
  std::optional<NashWitness> found;
  for_each_nash(g, max_support, [&](const NashWitness& w) {
    if (envy_gap(g, w.profile) == 0) {
      found = w;
      return false;
    }
    return true;
  });
  return found;
}

MixedProfile solve_envy_proof(const Game& g) {
  if (g.num_players != 2) {
    throw std::invalid_argument("solve_envy_proof: two-player games only");
  }
  const Game diff = difference_game(g);
  const auto d0 = diff.payoff_matrix(0);
  // Player 1 maximizes u_1 - u_0 over her own actions.
  const auto d1 = diff.payoff_matrix(1);
  std::vector<std::vector<Rational>> d1t(g.action_counts[1],
                                         std::vector<Rational>(g.action_counts[0]));
  for (int r = 0; r < g.action_counts[0]; ++r) {
    for (int c = 0; c < g.action_counts[1]; ++c) d1t[c][r] = d1[r][c];
  }
  MixedProfile x;
  x.strategies.resize(2);
  x.strategies[0] = zero_sum_value(d0).second;
  x.strategies[1] = zero_sum_value(d1t).second;
  return x;
}

MixedProfile solve_immune(const Game& g, int max_support) {
  if (g.num_players != 2) {
    throw std::invalid_argument("solve_immune: two-player games only");
  }
  const Game swapped = swap_negate(g);
  std::optional<MixedProfile> found;
  for_each_nash(swapped, max_support, [&](const NashWitness& w) {
    found = w.profile;
    return false;
  });
  if (!found) {
    throw not_found_error("solve_immune: no equilibrium within the support bound");
  }
  return *found;
}

ImmuneNashDecision decide_immune_nash(const Game& g) {
  if (g.num_players != 2) {
    throw std::invalid_argument("decide_immune_nash: two-player games only");
  }
  const int n0 = g.action_counts[0];
  const int n1 = g.action_counts[1];
  const auto m0 = g.payoff_matrix(0);
  const auto m1 = g.payoff_matrix(1);
  std::vector<std::vector<Rational>> m1t(n1, std::vector<Rational>(n0));
  for (int r = 0; r < n0; ++r) {
    for (int c = 0; c < n1; ++c) m1t[c][r] = m1[r][c];
  }

  ImmuneNashDecision decision;
  decision.values[0] = zero_sum_value(m0).first;
  decision.values[1] = zero_sum_value(m1t).first;

  // Variables: x_0 then x_1. Four blocks: optimal maximizer/minimizer of
  // G_0 = (u_0, -u_0) and of G_1 = (u_1, -u_1), at the known values.
  std::vector<Constraint> cons;
  auto block = [&](const std::vector<std::vector<Rational>>& m, bool rows_are_x0,
                   Relation rel, const Rational& value) {
    // rows_are_x0: constraint per column over x_0; else per row over x_1.
    if (rows_are_x0) {
      for (int c = 0; c < n1; ++c) {
        Constraint con;
        con.coeffs.assign(n0 + n1, Rational(0));
        for (int r = 0; r < n0; ++r) con.coeffs[r] = m[r][c];
        con.rel = rel;
        con.rhs = value;
        cons.push_back(std::move(con));
      }
    } else {
      for (int r = 0; r < n0; ++r) {
        Constraint con;
        con.coeffs.assign(n0 + n1, Rational(0));
        for (int c = 0; c < n1; ++c) con.coeffs[n0 + c] = m[r][c];
        con.rel = rel;
        con.rhs = value;
        cons.push_back(std::move(con));
      }
    }
  };
  block(m0, true, Relation::ge, decision.values[0]);   // x_0^T M_0 >= v_0 1^T
  block(m0, false, Relation::le, decision.values[0]);  // M_0 x_1 <= v_0 1
  block(m1, false, Relation::ge, decision.values[1]);  // M_1 x_1 >= v_1 1
  block(m1, true, Relation::le, decision.values[1]);   // x_0^T M_1 <= v_1 1^T
  for (int side = 0; side < 2; ++side) {
    Constraint sum;
    sum.coeffs.assign(n0 + n1, Rational(0));
    const int begin = side == 0 ? 0 : n0;
    const int len = side == 0 ? n0 : n1;
    for (int i = 0; i < len; ++i) sum.coeffs[begin + i] = 1;
    sum.rel = Relation::eq;
    sum.rhs = 1;
    cons.push_back(std::move(sum));
  }

  const LpOutcome outcome = feasibility(n0 + n1, cons);
  if (outcome.status == LpStatus::optimal) {
    decision.exists = true;
    MixedProfile x;
    x.strategies.resize(2);
    x.strategies[0].assign(outcome.point.begin(), outcome.point.begin() + n0);
    x.strategies[1].assign(outcome.point.begin() + n0, outcome.point.end());
    decision.witness = std::move(x);
  }
  return decision;
}

}  // namespace stabilis
