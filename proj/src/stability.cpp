#include "stabilis/stability.hpp"

#include <stdexcept>

namespace stabilis {

namespace {

struct GapScan {
  Rational nash, immune, envy;
  DeviationWitness nash_worst, immune_worst, envy_worst;
};

// One pass over all unilateral pure deviations. Every functional includes
// the deviation to an action already in the deviator's support, so each
// maximum is >= 0 by multilinearity.
GapScan scan(const Game& g, const MixedProfile& x) {
  if (g.num_players != 2) {
    throw std::invalid_argument("stability gaps: two-player games only");
  }
  check_profile_shape(g, x);
  const std::vector<Rational> base = expected_utilities(g, x);
  GapScan out;
  bool first = true;
  for (int b = 0; b < 2; ++b) {
    const int deviators[1] = {b};
    for (int a = 0; a < g.action_counts[b]; ++a) {
      const int devs[1] = {a};
      const std::vector<Rational> dev = expected_utilities(g, deviate(g, x, deviators, devs));
      const Rational nash_term = dev[b] - base[b];
      const Rational immune_term = base[1 - b] - dev[1 - b];
      const Rational envy_term = nash_term + immune_term;
      if (first || nash_term > out.nash) {
        out.nash = nash_term;
        out.nash_worst = {b, a};
      }
      if (first || immune_term > out.immune) {
        out.immune = immune_term;
        out.immune_worst = {b, a};
      }
      if (first || envy_term > out.envy) {
        out.envy = envy_term;
        out.envy_worst = {b, a};
      }
      first = false;
    }
  }
  return out;
}

}  // namespace

Rational nash_gap(const Game& g, const MixedProfile& x) { return scan(g, x).nash; }

Rational immune_gap(const Game& g, const MixedProfile& x) { return scan(g, x).immune; }

Rational envy_gap(const Game& g, const MixedProfile& x) { return scan(g, x).envy; }

StabilityReport classify(const Game& g, const MixedProfile& x, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("classify: eps must be >= 0");
  const GapScan s = scan(g, x);
  StabilityReport report;
  report.nash_gap = s.nash;
  report.immune_gap = s.immune;
  report.envy_gap = s.envy;
  report.eps = eps;
  report.nash = s.nash <= eps;
  report.immune = s.immune <= eps;
  report.envy_proof = s.envy <= eps;
  report.nash_worst = s.nash_worst;
  report.immune_worst = s.immune_worst;
  report.envy_worst = s.envy_worst;
  return report;
}

}  // namespace stabilis
