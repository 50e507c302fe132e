#include "stabilis/lp.hpp"

#include <stdexcept>

namespace stabilis {

namespace {

// Column bookkeeping for mapping tableau variables back to LP variables.
// Each LP variable is rewritten as base + sign * y (y >= 0), or as the
// difference of two columns when free.
struct VarMap {
  Rational base;
  int col_pos = -1;  // column contributing +y
  int col_neg = -1;  // column contributing -y (free variables only)
};

class Tableau {
 public:
  int add_column() { return num_cols_++; }

  void add_row(std::vector<Rational> coeffs, Rational rhs, int basic_col) {
    coeffs.resize(num_cols_, Rational(0));
    rows_.push_back(std::move(coeffs));
    rhs_.push_back(std::move(rhs));
    basis_.push_back(basic_col);
  }

  // Reduced-cost row for maximizing; obj[j] covers columns [0, obj.size()).
  void set_objective(std::vector<Rational> obj, Rational constant) {
    obj_ = std::move(obj);
    obj_.resize(num_cols_, Rational(0));
    obj_value_ = std::move(constant);
  }

  // Bland's rule: entering column = lowest index with positive reduced cost
  // among columns < col_limit; leaving row = min ratio, ties by lowest basic
  // variable index. Returns false when the objective is unbounded.
  bool optimize(int col_limit) {
    for (;;) {
      int entering = -1;
      for (int j = 0; j < col_limit; ++j) {
        if (obj_[j] > 0) { entering = j; break; }
      }
      if (entering < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][entering] <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][entering];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = static_cast<int>(r);
          best_ratio = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, entering);
    }
  }

  void pivot(int r, int j) {
    const Rational piv = rows_[r][j];
    if (piv != 1) {
      for (auto& v : rows_[r]) {
        if (v != 0) v /= piv;
      }
      rhs_[r] /= piv;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r || rows_[i][j] == 0) continue;
      const Rational factor = rows_[i][j];
      for (int k = 0; k < num_cols_; ++k) {
        if (rows_[r][k] != 0) rows_[i][k] -= factor * rows_[r][k];
      }
      rhs_[i] -= factor * rhs_[r];
    }
    if (obj_[j] != 0) {
      const Rational factor = obj_[j];
      for (int k = 0; k < num_cols_; ++k) {
        if (rows_[r][k] != 0) obj_[k] -= factor * rows_[r][k];
      }
      obj_value_ += factor * rhs_[r];
    }
    basis_[r] = j;
  }

  Rational column_value(int col) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] == col) return rhs_[r];
    }
    return Rational(0);
  }

  const Rational& objective_value() const { return obj_value_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<Rational>& row(int r) const { return rows_[r]; }
  const Rational& rhs(int r) const { return rhs_[r]; }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return num_cols_; }

 private:
  int num_cols_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> obj_;
  Rational obj_value_;
};

}  // namespace

LpOutcome simplex_solve(const LinearProgram& lp) {
  const int n = static_cast<int>(lp.objective.size());
  if (!lp.bounds.empty() && static_cast<int>(lp.bounds.size()) != n) {
    throw std::invalid_argument("lp: bounds/objective length mismatch");
  }
  for (const auto& c : lp.constraints) {
    if (static_cast<int>(c.coeffs.size()) != n) {
      throw std::invalid_argument("lp: constraint row length mismatch");
    }
  }

  // Rewrite every variable as a nonnegative column (pair of columns when
  // free); upper bounds become extra rows.
  Tableau tab;
  std::vector<VarMap> vmap(n);
  struct PendingRow { std::vector<Rational> coeffs; Relation rel; Rational rhs; };
  std::vector<PendingRow> pending;
  for (const auto& c : lp.constraints) pending.push_back({c.coeffs, c.rel, c.rhs});

  std::vector<Rational> objective = lp.objective;
  if (lp.sense == Sense::minimize) {
    for (auto& c : objective) c = -c;
  }
  Rational obj_const(0);

  for (int j = 0; j < n; ++j) {
    const VarBound bound = lp.bounds.empty() ? VarBound{} : lp.bounds[j];
    VarMap& m = vmap[j];
    if (bound.lower) {
      m.base = *bound.lower;
      m.col_pos = tab.add_column();
      if (bound.upper) {
        if (*bound.upper < *bound.lower) {
          return {LpStatus::infeasible, {}, Rational(0)};
        }
        PendingRow ub;
        ub.coeffs.assign(n, Rational(0));
        ub.coeffs[j] = 1;
        ub.rel = Relation::le;
        ub.rhs = *bound.upper;
        pending.push_back(std::move(ub));
      }
    } else if (bound.upper) {
      // x = upper - y
      m.base = *bound.upper;
      m.col_neg = tab.add_column();
    } else {
      m.col_pos = tab.add_column();
      m.col_neg = tab.add_column();
    }
  }

  // Substitute x_j = base_j + y_pos - y_neg into each row and the objective.
  struct StdRow { std::vector<Rational> coeffs; Relation rel; Rational rhs; };
  std::vector<StdRow> std_rows;
  for (const auto& row : pending) {
    StdRow sr;
    sr.coeffs.assign(tab.num_cols(), Rational(0));
    sr.rel = row.rel;
    sr.rhs = row.rhs;
    for (int j = 0; j < n; ++j) {
      if (row.coeffs[j] == 0) continue;
      sr.rhs -= row.coeffs[j] * vmap[j].base;
      if (vmap[j].col_pos >= 0) sr.coeffs[vmap[j].col_pos] += row.coeffs[j];
      if (vmap[j].col_neg >= 0) sr.coeffs[vmap[j].col_neg] -= row.coeffs[j];
    }
    // Flip rows so rhs >= 0; zero-rhs >= rows also become <= so their slack
    // can seed the basis without an artificial.
    if (sr.rhs < 0 || (sr.rhs == 0 && sr.rel == Relation::ge)) {
      for (auto& v : sr.coeffs) v = -v;
      sr.rhs = -sr.rhs;
      sr.rel = sr.rel == Relation::le   ? Relation::ge
               : sr.rel == Relation::ge ? Relation::le
                                        : Relation::eq;
    }
    std_rows.push_back(std::move(sr));
  }
  std::vector<Rational> obj_cols(tab.num_cols(), Rational(0));
  for (int j = 0; j < n; ++j) {
    if (objective[j] == 0) continue;
    obj_const += objective[j] * vmap[j].base;
    if (vmap[j].col_pos >= 0) obj_cols[vmap[j].col_pos] += objective[j];
    if (vmap[j].col_neg >= 0) obj_cols[vmap[j].col_neg] -= objective[j];
  }

  // Slack/surplus columns, then artificials for rows without a natural basis.
  std::vector<int> row_basic(std_rows.size(), -1);
  for (std::size_t r = 0; r < std_rows.size(); ++r) {
    if (std_rows[r].rel == Relation::le) {
      const int s = tab.add_column();
      std_rows[r].coeffs.resize(tab.num_cols(), Rational(0));
      std_rows[r].coeffs[s] = 1;
      row_basic[r] = s;
    } else if (std_rows[r].rel == Relation::ge) {
      const int s = tab.add_column();
      std_rows[r].coeffs.resize(tab.num_cols(), Rational(0));
      std_rows[r].coeffs[s] = -1;
    }
  }
  const int num_real_cols = tab.num_cols();
  std::vector<int> artificial_rows;
  for (std::size_t r = 0; r < std_rows.size(); ++r) {
    if (row_basic[r] < 0) {
      const int a = tab.add_column();
      std_rows[r].coeffs.resize(tab.num_cols(), Rational(0));
      std_rows[r].coeffs[a] = 1;
      row_basic[r] = a;
      artificial_rows.push_back(static_cast<int>(r));
    }
  }
  for (std::size_t r = 0; r < std_rows.size(); ++r) {
    tab.add_row(std::move(std_rows[r].coeffs), std::move(std_rows[r].rhs), row_basic[r]);
  }

  // Phase 1: maximize -sum(artificials), expressed over nonbasic columns.
  if (!artificial_rows.empty()) {
    std::vector<Rational> phase1(tab.num_cols(), Rational(0));
    Rational phase1_const(0);
    for (int r : artificial_rows) {
      for (int j = 0; j < num_real_cols; ++j) phase1[j] += tab.row(r)[j];
      phase1_const -= tab.rhs(r);
    }
    tab.set_objective(std::move(phase1), std::move(phase1_const));
    if (!tab.optimize(num_real_cols)) {
      throw std::logic_error("lp: phase 1 unbounded");  // cannot happen
    }
    if (tab.objective_value() != 0) {
      return {LpStatus::infeasible, {}, Rational(0)};
    }
    // Pivot leftover artificials out of the basis where possible; rows that
    // cannot pivot are redundant (all-zero over real columns) and inert.
    for (int r = 0; r < tab.num_rows(); ++r) {
      if (tab.basis()[r] < num_real_cols) continue;
      for (int j = 0; j < num_real_cols; ++j) {
        if (tab.row(r)[j] != 0) {
          tab.pivot(r, j);
          break;
        }
      }
    }
  }

  // Phase 2 with the real objective, reduced against the current basis.
  {
    std::vector<Rational> reduced = obj_cols;
    reduced.resize(tab.num_cols(), Rational(0));
    Rational value = obj_const;
    for (int r = 0; r < tab.num_rows(); ++r) {
      const int b = tab.basis()[r];
      if (reduced[b] == 0) continue;
      const Rational factor = reduced[b];
      for (int k = 0; k < tab.num_cols(); ++k) {
        if (tab.row(r)[k] != 0) reduced[k] -= factor * tab.row(r)[k];
      }
      value += factor * tab.rhs(r);
    }
    tab.set_objective(std::move(reduced), std::move(value));
  }
  if (!tab.optimize(num_real_cols)) {
    return {LpStatus::unbounded, {}, Rational(0)};
  }

  LpOutcome out;
  out.status = LpStatus::optimal;
  out.value = tab.objective_value();
  if (lp.sense == Sense::minimize) out.value = -out.value;
  out.point.resize(n);
  for (int j = 0; j < n; ++j) {
    Rational v = vmap[j].base;
    if (vmap[j].col_pos >= 0) v += tab.column_value(vmap[j].col_pos);
    if (vmap[j].col_neg >= 0) v -= tab.column_value(vmap[j].col_neg);
    out.point[j] = std::move(v);
  }
  return out;
}

LpOutcome feasibility(int num_vars, const std::vector<Constraint>& constraints,
                      const std::vector<VarBound>& bounds) {
  LinearProgram lp;
  lp.objective.assign(num_vars, Rational(0));
  lp.constraints = constraints;
  lp.bounds = bounds;
  return simplex_solve(lp);
}

std::pair<Rational, std::vector<Rational>> zero_sum_value(
    const std::vector<std::vector<Rational>>& payoff) {
  if (payoff.empty() || payoff[0].empty()) {
    throw std::invalid_argument("zero_sum_value: empty payoff matrix");
  }
  const int rows = static_cast<int>(payoff.size());
  const int cols = static_cast<int>(payoff[0].size());
  for (const auto& row : payoff) {
    if (static_cast<int>(row.size()) != cols) {
      throw std::invalid_argument("zero_sum_value: ragged payoff matrix");
    }
  }

  // Variables: x_0..x_{rows-1}, then the free game value z.
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(rows + 1, Rational(0));
  lp.objective[rows] = 1;
  lp.bounds.assign(rows + 1, VarBound{});
  lp.bounds[rows] = VarBound{std::nullopt, std::nullopt};
  for (int c = 0; c < cols; ++c) {
    Constraint con;
    con.coeffs.assign(rows + 1, Rational(0));
    for (int r = 0; r < rows; ++r) con.coeffs[r] = payoff[r][c];
    con.coeffs[rows] = -1;
    con.rel = Relation::ge;
    con.rhs = 0;
    lp.constraints.push_back(std::move(con));
  }
  Constraint sum;
  sum.coeffs.assign(rows + 1, Rational(0));
  for (int r = 0; r < rows; ++r) sum.coeffs[r] = 1;
  sum.rel = Relation::eq;
  sum.rhs = 1;
  lp.constraints.push_back(std::move(sum));

  const LpOutcome outcome = simplex_solve(lp);
  if (outcome.status != LpStatus::optimal) {
    throw std::logic_error("zero_sum_value: solver failed on a bounded feasible program");
  }
  std::vector<Rational> maximin(outcome.point.begin(), outcome.point.begin() + rows);
  return {outcome.value, std::move(maximin)};
}

}  // namespace stabilis
