#pragma once

#include "stabilis/game.hpp"
#include "stabilis/rational.hpp"

namespace stabilis {

struct DeviationWitness {
  int player = 0;
  int action = 0;
};

// Exact distances from the three stability notions, with the argmax
// deviation per notion (ties broken by lowest player, then lowest action).
struct StabilityReport {
  Rational nash_gap;
  Rational immune_gap;
  Rational envy_gap;
  Rational eps;
  bool nash = false;
  bool immune = false;
  bool envy_proof = false;
  DeviationWitness nash_worst;
  DeviationWitness immune_worst;
  DeviationWitness envy_worst;
};

// max over b and pure a in A_b of u_b(a : x_other) - u_b(x).
// x is an eps-Nash iff the result is <= eps, a Nash iff it is 0.
Rational nash_gap(const Game& g, const MixedProfile& x);

// max over b, a of u_other(x) - u_other(a : x_other): the worst loss a
// unilateral deviation can inflict on the non-deviating player.
Rational immune_gap(const Game& g, const MixedProfile& x);

// max over b, a of [u_b(a : x_other) - u_b(x)] - [u_other(a : x_other) -
// u_other(x)]: the deviator's best competitive edge in utility change.
Rational envy_gap(const Game& g, const MixedProfile& x);

// All three gaps plus eps-classifications. Rejects eps < 0.
StabilityReport classify(const Game& g, const MixedProfile& x, const Rational& eps);

}  // namespace stabilis
