#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabilis/rational.hpp"

namespace stabilis {

// One action index per player.
using PureProfile = std::vector<int>;

// One probability vector per player (a product distribution). Entries are
// >= 0 and each vector sums exactly to 1.
struct MixedProfile {
  std::vector<std::vector<Rational>> strategies;

  int num_players() const { return static_cast<int>(strategies.size()); }

  static MixedProfile pure(std::span<const int> action_counts,
                           std::span<const int> actions);

  // Shape and probability invariants; throws std::invalid_argument.
  void validate() const;
};

// Finite normal-form game with dense utility tensors.
struct Game {
  int num_players = 0;
  std::vector<int> action_counts;
  // utilities[i] holds P_i's payoff for every pure profile, row-major with
  // the last player's action index varying fastest.
  std::vector<std::vector<Rational>> utilities;

  std::size_t num_pure_profiles() const;
  std::size_t flat_index(std::span<const int> actions) const;
  const Rational& utility(int player, std::span<const int> actions) const;

  // Two-player convenience: the matrix form M_b of u_b, rows indexed by
  // P_0's actions and columns by P_1's.
  std::vector<std::vector<Rational>> payoff_matrix(int player) const;

  // Shape invariants; throws std::invalid_argument.
  void validate() const;
};

// Throws std::invalid_argument when profile and game shapes disagree.
void check_profile_shape(const Game& g, const MixedProfile& x);

// Line-oriented text format:
//   players: m
//   actions: n1 ... nm
//   utility i:   (for i = 0..m-1, in order)
//   <prod nj rationals, row-major, last player's index fastest>
// Comments start with '#'. All numbers in p/q literal form.
Game parse_game(std::string_view text);
std::string serialize_game(const Game& g);

// Profile file: a "profile:" header then one probability vector per line.
MixedProfile parse_profile(std::string_view text);
std::string serialize_profile(const MixedProfile& x);

// Exact product-distribution expectation of u_player under x.
Rational expected_utility(const Game& g, const MixedProfile& x, int player);

// Expected utility of every player in one sweep over the joint support.
std::vector<Rational> expected_utilities(const Game& g, const MixedProfile& x);

// Expected utility of `observer` under x with the coordinates in `deviators`
// replaced by the pure actions in `deviation` (parallel arrays).
Rational deviation_value(const Game& g, const MixedProfile& x,
                         std::span<const int> deviators,
                         std::span<const int> deviation, int observer);

// x with the listed coordinates replaced by point masses.
MixedProfile deviate(const Game& g, const MixedProfile& x,
                     std::span<const int> deviators,
                     std::span<const int> deviation);

// G' = ({-u_1, -u_0}, {A_0, A_1}): Nash equilibria of G' are exactly the
// immune profiles of G. Two-player only.
Game swap_negate(const Game& g);

// G' = ({u_0-u_1, u_1-u_0}, {A_0, A_1}): a zero-sum game whose Nash
// equilibria are exactly the envy-proof profiles of G. Two-player only.
Game difference_game(const Game& g);

// G_b = ({u_b, -u_b}): P_b keeps u_b, the opponent gets -u_b. Two-player.
Game paired_zero_sum(const Game& g, int b);

}  // namespace stabilis
