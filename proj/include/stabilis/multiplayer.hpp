#pragma once

#include <optional>
#include <vector>

#include "stabilis/approx.hpp"
#include "stabilis/game.hpp"
#include "stabilis/rational.hpp"

namespace stabilis {

struct CoalitionWitness {
  std::vector<int> coalition;
  std::vector<int> deviation;
  int in_player = -1;   // i in S (nash / envy)
  int out_player = -1;  // j not in S (immune / envy)
};

// Coalition fault-tolerance gaps for coalitions of size at most t (strict
// subsets of the player set), with worst-case witnesses per notion.
struct CoalitionReport {
  int t = 1;
  Rational eps;
  Rational nash_gap;
  Rational immune_gap;
  Rational envy_gap;
  bool nash = false;
  bool immune = false;
  bool envy_proof = false;
  CoalitionWitness nash_worst;
  CoalitionWitness immune_worst;
  CoalitionWitness envy_worst;
};

// Number of (coalition, pure deviation) pairs the scan visits; runs whose
// cost exceeds the budget abort with budget_error and a sizing message.
Int coalition_scan_cost(const Game& g, int t);

// max over S (|S| <= t), pure x_S', i in S of u_i(x_-S : x_S') - u_i(x).
Rational coalition_nash_gap(const Game& g, const MixedProfile& x, int t,
                            long long budget = kDefaultScanBudget);

// max over S, x_S', j not in S of u_j(x) - u_j(x_-S : x_S').
Rational coalition_immune_gap(const Game& g, const MixedProfile& x, int t,
                              long long budget = kDefaultScanBudget);

// max over S, x_S', i in S, j not in S of
// [u_i(x_-S : x_S') - u_i(x)] - [u_j(x_-S : x_S') - u_j(x)].
// Rejects t >= m (no outside observer would remain).
Rational coalition_envy_gap(const Game& g, const MixedProfile& x, int t,
                            long long budget = kDefaultScanBudget);

// All three notions in one scan, classified at eps.
CoalitionReport coalition_check(const Game& g, const MixedProfile& x, int t,
                                const Rational& eps,
                                long long budget = kDefaultScanBudget);

// Minimal gamma such that any unilateral pure deviation changes every two
// players' utilities by amounts within gamma of each other.
Rational gamma_varied(const Game& g);

// Minimal gamma such that any unilateral pure deviation changes every
// *other* player's utility by at most gamma.
Rational gamma_sensitive(const Game& g);

// True iff every u_i is invariant under permutations of the other players'
// coordinates. Requires identical action sets.
bool is_anonymous(const Game& g);

struct GameShapeMetrics {
  Rational gamma_sensitive;
  Rational gamma_varied;
  std::optional<bool> anonymous;  // unset when action sets differ
};

GameShapeMetrics shape_metrics(const Game& g);

}  // namespace stabilis
