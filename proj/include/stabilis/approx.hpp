#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "stabilis/game.hpp"
#include "stabilis/rational.hpp"

namespace stabilis {

// Uniform distribution over a multiset of k action indices.
struct KUniformStrategy {
  long long k = 0;
  std::vector<int> multiset;  // size k, non-decreasing

  std::vector<Rational> probabilities(int num_actions) const;
};

// Streams all C(n+k-1, k) multisets in non-decreasing lexicographic order.
class KUniformEnumerator {
 public:
  KUniformEnumerator(int num_actions, long long k);
  std::optional<KUniformStrategy> next();

 private:
  int num_actions_;
  long long k_;
  std::vector<int> current_;
  bool done_ = false;
  bool started_ = false;
};

std::vector<KUniformStrategy> enumerate_k_uniform(int num_actions, long long k);

// Rational upper bound on ln n (exact arithmetic; never an underestimate).
Rational ln_upper(int n);

// k = max(1, ceil(3 ln(n) / eps^2)), using ln_upper so k is never
// undercounted. Rejects eps <= 0.
long long k_for(int num_actions, const Rational& eps);

Int binomial(long long n, long long k);

class scan_exhausted_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long long kDefaultScanBudget = 10'000'000;

struct ApproxSearchOutcome {
  long long k = 0;
  Rational eps;
  bool found_any = false;
  Rational best_envy;   // eps' = min envy_gap among k-uniform eps-Nash pairs
  MixedProfile witness; // lexicographically first argmin (when found_any)
  Int num_candidates;   // total k-uniform strategy pairs
  // max(0, eps' - 2 eps): when > 0, no (eps'-2eps)-envy-proof Nash
  // equilibrium exists in g. Only set after a complete scan.
  Rational nonexistence_bound;
  bool budget_exceeded = false;  // scan stopped early, results partial
};

// Exhaustive scan of all k-uniform strategy pairs: among those with
// nash_gap <= eps, record the minimum envy_gap and its first witness.
// k defaults to k_for(max action count, eps).
ApproxSearchOutcome approx_envy_nash_search(const Game& g, const Rational& eps,
                                            std::optional<long long> k_override = {},
                                            long long budget = kDefaultScanBudget);

// k-uniform eps-Nash scan on swap_negate(g); the first hit is an
// eps-immune profile of g. Throws scan_exhausted_error when the full scan
// finds nothing and budget_error when the scan is cut short.
MixedProfile approx_immune_search(const Game& g, const Rational& eps,
                                  long long budget = kDefaultScanBudget);

}  // namespace stabilis
