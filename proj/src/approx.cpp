#include "stabilis/approx.hpp"

#include <algorithm>

#include "stabilis/stability.hpp"

namespace stabilis {

std::vector<Rational> KUniformStrategy::probabilities(int num_actions) const {
  std::vector<Rational> probs(num_actions, Rational(0));
  const Rational share = make_rational(1, Int(k));
  for (int a : multiset) probs[a] += share;
  return probs;
}

KUniformEnumerator::KUniformEnumerator(int num_actions, long long k)
    : num_actions_(num_actions), k_(k) {
  if (num_actions < 1 || k < 1) {
    throw std::invalid_argument("k-uniform enumeration: need n >= 1 and k >= 1");
  }
}

std::optional<KUniformStrategy> KUniformEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    current_.assign(k_, 0);
    started_ = true;
    return KUniformStrategy{k_, current_};
  }
  // Non-decreasing lexicographic successor.
  long long i = k_ - 1;
  while (i >= 0 && current_[i] == num_actions_ - 1) --i;
  if (i < 0) {
    done_ = true;
    return std::nullopt;
  }
  const int v = current_[i] + 1;
  for (long long j = i; j < k_; ++j) current_[j] = v;
  return KUniformStrategy{k_, current_};
}

std::vector<KUniformStrategy> enumerate_k_uniform(int num_actions, long long k) {
  KUniformEnumerator en(num_actions, k);
  std::vector<KUniformStrategy> out;
  while (auto s = en.next()) out.push_back(std::move(*s));
  return out;
}

namespace {

// Upper bound on 2*atanh(z) = ln((1+z)/(1-z)) for rational z in [0, 1/2):
// the truncated odd series plus a geometric tail bound.
Rational two_atanh_upper(const Rational& z) {
  const int terms = 12;
  Rational sum(0);
  Rational power = z;  // z^(2j+1)
  const Rational z2 = z * z;
  for (int j = 0; j < terms; ++j) {
    sum += power / (2 * j + 1);
    power *= z2;
  }
  // tail: sum_{j>=terms} z^(2j+1)/(2j+1) <= z^(2*terms+1) / ((2*terms+1)(1-z^2))
  const Rational tail = power / ((2 * terms + 1) * (1 - z2));
  return 2 * (sum + tail);
}

}  // namespace

Rational ln_upper(int n) {
  if (n < 1) throw std::invalid_argument("ln_upper: n must be >= 1");
  // n = 2^e * r with r in [1, 2); ln n <= e * ln2_upper + 2*atanh((r-1)/(r+1)).
  int e = 0;
  int pow2 = 1;
  while (2 * pow2 <= n) {
    pow2 *= 2;
    ++e;
  }
  const Rational ln2_up = two_atanh_upper(make_rational(1, 3));
  const Rational r = make_rational(n, pow2);
  return e * ln2_up + two_atanh_upper((r - 1) / (r + 1));
}

long long k_for(int num_actions, const Rational& eps) {
  if (num_actions < 1) throw std::invalid_argument("k_for: n must be >= 1");
  if (eps <= 0) throw std::invalid_argument("k_for: eps must be > 0");
  const Rational k = 3 * ln_upper(num_actions) / (eps * eps);
  const Int ceiling = ceil_int(k);
  if (ceiling < 1) return 1;
  return ceiling.convert_to<long long>();
}

Int binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

ApproxSearchOutcome approx_envy_nash_search(const Game& g, const Rational& eps,
                                            std::optional<long long> k_override,
                                            long long budget) {
  if (g.num_players != 2) {
    throw std::invalid_argument("approx_envy_nash_search: two-player games only");
  }
  if (eps <= 0) throw std::invalid_argument("approx_envy_nash_search: eps must be > 0");
  g.validate();
  const int n0 = g.action_counts[0];
  const int n1 = g.action_counts[1];

  ApproxSearchOutcome out;
  out.eps = eps;
  out.k = k_override ? *k_override : k_for(std::max(n0, n1), eps);
  if (out.k < 1) throw std::invalid_argument("approx_envy_nash_search: k must be >= 1");
  out.num_candidates = binomial(n0 + out.k - 1, out.k) * binomial(n1 + out.k - 1, out.k);
  out.nonexistence_bound = 0;

  long long scanned = 0;
  KUniformEnumerator outer(n0, out.k);
  while (auto s0 = outer.next()) {
    const std::vector<Rational> probs0 = s0->probabilities(n0);
    KUniformEnumerator inner(n1, out.k);
    while (auto s1 = inner.next()) {
      if (scanned == budget) {
        out.budget_exceeded = true;
        return out;
      }
      ++scanned;
      MixedProfile x;
      x.strategies = {probs0, s1->probabilities(n1)};
      if (nash_gap(g, x) > eps) continue;
      const Rational envy = envy_gap(g, x);
      if (!out.found_any || envy < out.best_envy) {
        out.found_any = true;
        out.best_envy = envy;
        out.witness = std::move(x);
      }
    }
  }
  if (out.found_any && out.best_envy > 2 * eps) {
    out.nonexistence_bound = out.best_envy - 2 * eps;
  }
  return out;
}

MixedProfile approx_immune_search(const Game& g, const Rational& eps, long long budget) {
  if (g.num_players != 2) {
    throw std::invalid_argument("approx_immune_search: two-player games only");
  }
  if (eps <= 0) throw std::invalid_argument("approx_immune_search: eps must be > 0");
  const Game swapped = swap_negate(g);
  const int n0 = g.action_counts[0];
  const int n1 = g.action_counts[1];
  const long long k = k_for(std::max(n0, n1), eps);

  long long scanned = 0;
  KUniformEnumerator outer(n0, k);
  while (auto s0 = outer.next()) {
    const std::vector<Rational> probs0 = s0->probabilities(n0);
    KUniformEnumerator inner(n1, k);
    while (auto s1 = inner.next()) {
      if (scanned == budget) {
        throw budget_error("approx_immune_search: budget of " + std::to_string(budget) +
                           " candidate pairs exhausted before a hit");
      }
      ++scanned;
      MixedProfile x;
      x.strategies = {probs0, s1->probabilities(n1)};
      if (nash_gap(swapped, x) <= eps) return x;
    }
  }
  throw scan_exhausted_error("approx_immune_search: no k-uniform eps-Nash of the swapped game at k=" +
                             std::to_string(k));
}

}  // namespace stabilis
