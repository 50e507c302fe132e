#include "stabilis/multiplayer.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabilis {

namespace {

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

struct CoalitionScan {
  Rational nash, immune, envy;
  CoalitionWitness nash_worst, immune_worst, envy_worst;
  bool any_pair = false;  // envy needs an (i, j) pair to exist
};

// Enumerates strict-subset coalitions in size-then-lexicographic order and
// deviation tuples in row-major order (last member fastest). Deterministic
// strictly-greater updates fix the witnesses.
CoalitionScan scan_coalitions(const Game& g, const MixedProfile& x, int t,
                              long long budget) {
  g.validate();
  check_profile_shape(g, x);
  const int m = g.num_players;
  if (t < 1 || t > m) throw std::invalid_argument("coalition scan: t out of range");
  const Int cost = coalition_scan_cost(g, t);
  if (cost > budget) {
    throw budget_error("coalition scan: " + cost.str() + " (coalition, deviation) pairs exceed budget " +
                       std::to_string(budget) + "; lower t or raise the budget");
  }

  const std::vector<Rational> base = expected_utilities(g, x);
  CoalitionScan out;
  bool first = true;
  const int max_size = std::min(t, m - 1);
  for (int s = 1; s <= max_size; ++s) {
    std::vector<int> coalition(s);
    for (int i = 0; i < s; ++i) coalition[i] = i;
    do {
      std::vector<int> devs(s, 0);
      for (;;) {
        const std::vector<Rational> vals =
            expected_utilities(g, deviate(g, x, coalition, devs));
        // Best in-coalition gain and worst outside loss for this deviation.
        Rational gain;
        int gain_player = -1;
        for (int i : coalition) {
          const Rational term = vals[i] - base[i];
          if (gain_player < 0 || term > gain) {
            gain = term;
            gain_player = i;
          }
        }
        Rational loss;
        int loss_player = -1;
        std::size_t cursor = 0;
        for (int j = 0; j < m; ++j) {
          if (cursor < coalition.size() && coalition[cursor] == j) {
            ++cursor;
            continue;
          }
          const Rational term = base[j] - vals[j];
          if (loss_player < 0 || term > loss) {
            loss = term;
            loss_player = j;
          }
        }
        if (first || gain > out.nash) {
          out.nash = gain;
          out.nash_worst = {coalition, devs, gain_player, -1};
        }
        if (first || loss > out.immune) {
          out.immune = loss;
          out.immune_worst = {coalition, devs, -1, loss_player};
        }
        const Rational envy = gain + loss;
        if (first || envy > out.envy) {
          out.envy = envy;
          out.envy_worst = {coalition, devs, gain_player, loss_player};
        }
        out.any_pair = true;
        first = false;

        int pos = s - 1;
        while (pos >= 0 && devs[pos] == g.action_counts[coalition[pos]] - 1) {
          devs[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++devs[pos];
      }
    } while (next_combination(coalition, m));
  }
  return out;
}

}  // namespace

Int coalition_scan_cost(const Game& g, int t) {
  const int m = g.num_players;
  Int cost = 0;
  const int max_size = std::min(t, m - 1);
  for (int s = 1; s <= max_size; ++s) {
    std::vector<int> coalition(s);
    for (int i = 0; i < s; ++i) coalition[i] = i;
    do {
      Int tuples = 1;
      for (int i : coalition) tuples *= g.action_counts[i];
      cost += tuples;
    } while (next_combination(coalition, m));
  }
  return cost;
}

Rational coalition_nash_gap(const Game& g, const MixedProfile& x, int t, long long budget) {
  return scan_coalitions(g, x, t, budget).nash;
}

Rational coalition_immune_gap(const Game& g, const MixedProfile& x, int t, long long budget) {
  return scan_coalitions(g, x, t, budget).immune;
}

Rational coalition_envy_gap(const Game& g, const MixedProfile& x, int t, long long budget) {
  if (t >= g.num_players) {
    throw std::invalid_argument("coalition_envy_gap: t must leave an outside observer (t < m)");
  }
  return scan_coalitions(g, x, t, budget).envy;
}

CoalitionReport coalition_check(const Game& g, const MixedProfile& x, int t,
                                const Rational& eps, long long budget) {
  if (eps < 0) throw std::invalid_argument("coalition_check: eps must be >= 0");
  const CoalitionScan s = scan_coalitions(g, x, t, budget);
  CoalitionReport report;
  report.t = t;
  report.eps = eps;
  report.nash_gap = s.nash;
  report.immune_gap = s.immune;
  report.envy_gap = s.envy;
  report.nash = s.nash <= eps;
  report.immune = s.immune <= eps;
  report.envy_proof = s.envy <= eps;
  report.nash_worst = s.nash_worst;
  report.immune_worst = s.immune_worst;
  report.envy_worst = s.envy_worst;
  return report;
}

namespace {

// Visits every pure profile with every unilateral pure deviation, handing
// the caller both utility rows.
template <typename Fn>
void for_each_unilateral(const Game& g, Fn&& fn) {
  const int m = g.num_players;
  std::vector<int> profile(m, 0);
  for (;;) {
    const std::size_t base_idx = g.flat_index(profile);
    for (int i = 0; i < m; ++i) {
      std::vector<int> deviated = profile;
      for (int a = 0; a < g.action_counts[i]; ++a) {
        deviated[i] = a;
        fn(i, base_idx, g.flat_index(deviated));
      }
      deviated[i] = profile[i];
    }
    int pos = m - 1;
    while (pos >= 0 && profile[pos] == g.action_counts[pos] - 1) {
      profile[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++profile[pos];
  }
}

}  // namespace

Rational gamma_varied(const Game& g) {
  g.validate();
  const int m = g.num_players;
  Rational worst(0);
  for_each_unilateral(g, [&](int /*i*/, std::size_t base_idx, std::size_t dev_idx) {
    for (int j = 0; j < m; ++j) {
      const Rational dj = g.utilities[j][dev_idx] - g.utilities[j][base_idx];
      for (int k = j + 1; k < m; ++k) {
        const Rational dk = g.utilities[k][dev_idx] - g.utilities[k][base_idx];
        const Rational diff = dj >= dk ? dj - dk : dk - dj;
        if (diff > worst) worst = diff;
      }
    }
  });
  return worst;
}

Rational gamma_sensitive(const Game& g) {
  g.validate();
  const int m = g.num_players;
  Rational worst(0);
  for_each_unilateral(g, [&](int i, std::size_t base_idx, std::size_t dev_idx) {
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      const Rational dj = g.utilities[j][dev_idx] - g.utilities[j][base_idx];
      const Rational mag = dj >= 0 ? dj : -dj;
      if (mag > worst) worst = mag;
    }
  });
  return worst;
}

bool is_anonymous(const Game& g) {
  g.validate();
  for (int c : g.action_counts) {
    if (c != g.action_counts[0]) {
      throw std::invalid_argument("is_anonymous: identical action sets required");
    }
  }
  const int m = g.num_players;
  // u_i must agree on profiles whose off-i coordinates are permutations of
  // each other, i.e. match u_i at the sorted canonical representative.
  std::vector<int> profile(m, 0);
  std::vector<int> canon(m, 0);
  for (;;) {
    const std::size_t idx = g.flat_index(profile);
    for (int i = 0; i < m; ++i) {
      // canonical representative: x_i kept at position i, others sorted
      std::vector<int> others;
      others.reserve(m - 1);
      for (int j = 0; j < m; ++j) {
        if (j != i) others.push_back(profile[j]);
      }
      std::sort(others.begin(), others.end());
      std::size_t cursor = 0;
      for (int j = 0; j < m; ++j) canon[j] = (j == i) ? profile[i] : others[cursor++];
      if (g.utilities[i][g.flat_index(canon)] != g.utilities[i][idx]) return false;
    }
    int pos = m - 1;
    while (pos >= 0 && profile[pos] == g.action_counts[pos] - 1) {
      profile[pos] = 0;
      --pos;
    }
    if (pos < 0) return true;
    ++profile[pos];
  }
}

GameShapeMetrics shape_metrics(const Game& g) {
  GameShapeMetrics metrics;
  metrics.gamma_sensitive = gamma_sensitive(g);
  metrics.gamma_varied = gamma_varied(g);
  const bool uniform_actions =
      std::all_of(g.action_counts.begin(), g.action_counts.end(),
                  [&](int c) { return c == g.action_counts[0]; });
  if (uniform_actions) metrics.anonymous = is_anonymous(g);
  return metrics;
}

}  // namespace stabilis
