#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stabilis/rational.hpp"

namespace stabilis {

enum class Relation { le, eq, ge };
enum class Sense { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::le;
  Rational rhs;
};

// Default bound is x >= 0; lower = nullopt makes the variable free.
struct VarBound {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;
};

struct LinearProgram {
  Sense sense = Sense::maximize;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<VarBound> bounds;  // empty = all variables >= 0
};

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> point;  // meaningful when status == optimal
  Rational value;               // meaningful when status == optimal
};

// Exact two-phase simplex with Bland's rule (termination guaranteed, no
// tolerances anywhere). Throws std::invalid_argument on shape mismatches.
LpOutcome simplex_solve(const LinearProgram& lp);

// Zero-objective solve: a feasible point or Infeasible.
LpOutcome feasibility(int num_vars, const std::vector<Constraint>& constraints,
                      const std::vector<VarBound>& bounds = {});

// Value and a maximin distribution over the rows of `payoff`, solved as
//   max z  s.t.  x^T M >= z 1^T,  x^T 1 = 1,  x >= 0
// with z free. The returned x satisfies every column constraint exactly.
std::pair<Rational, std::vector<Rational>> zero_sum_value(
    const std::vector<std::vector<Rational>>& payoff);

}  // namespace stabilis
