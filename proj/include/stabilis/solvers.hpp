#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stabilis/game.hpp"
#include "stabilis/rational.hpp"

namespace stabilis {

// Exact equilibrium with its support pattern. `degenerate` marks supports
// whose equilibria form a continuum; the profile is then one canonical
// vertex of it.
struct NashWitness {
  MixedProfile profile;
  std::vector<std::vector<int>> supports;
  std::vector<Rational> payoffs;
  bool degenerate = false;
};

struct ImmuneNashDecision {
  bool exists = false;
  std::optional<MixedProfile> witness;
  std::array<Rational, 2> values{};  // v_0, v_1: the paired zero-sum game values
};

class not_found_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nash equilibrium of the zero-sum difference game ({u_0-u_1, u_1-u_0}),
// which is always an envy-proof profile of g. Polynomial time.
MixedProfile solve_envy_proof(const Game& g);

// Nash equilibrium of swap_negate(g), which is always an immune profile of
// g, found by support enumeration. max_support = 0 means the full action
// count (existence is then guaranteed); otherwise throws not_found_error
// when no equilibrium fits the bound.
MixedProfile solve_immune(const Game& g, int max_support = 0);

// Decides existence of an immune Nash equilibrium via the paired zero-sum
// values v_b and one joint feasibility system: x_0 optimal maximizer and
// x_1 optimal minimizer in G_0, simultaneously x_1 optimal maximizer and
// x_0 optimal minimizer in G_1.
ImmuneNashDecision decide_immune_nash(const Game& g);

// Streams every Nash equilibrium with per-player support sizes <=
// max_support (0 = full), one witness per solvable support pair, ordered by
// (|S_0|, |S_1|, lexicographic supports). Return false from visit to stop.
void for_each_nash(const Game& g, int max_support,
                   const std::function<bool(const NashWitness&)>& visit);

std::vector<NashWitness> enumerate_nash(const Game& g, int max_support = 0);

// First enumerated Nash witness with envy_gap = 0, or absent.
std::optional<NashWitness> find_envy_proof_nash(const Game& g, int max_support = 0);

}  // namespace stabilis
