#include "sscover/lp.hpp"

#include <algorithm>
#include <ostream>

#include "sscover/errors.hpp"
#include "sscover/union_dist.hpp"

namespace ssc {

namespace {

ItemSet subset_to_items(std::uint32_t subset, std::size_t m) {
  ItemSet s(m);
  for (std::size_t i = 0; i < m; ++i)
    if (subset & (1u << i)) s.set(i);
  return s;
}

// Exact min c^T x  s.t.  A x >= b, 0 <= x <= 1, via dense two-phase
// simplex with Bland's rule. Sizes here are tiny (2^m rows, m <= 12).
class ExactSimplex {
 public:
  ExactSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
               std::vector<Rational> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  LpSolution solve() {
    const std::size_t n = c_.size();
    const std::size_t ineq = a_.size();
    const std::size_t rows = ineq + n;  // plus upper bounds x_i <= 1

    // Equality form: for >= rows, a·x − s = b; for x_i <= 1, x_i + t = 1.
    // Columns: x (n) | surplus (ineq) | slack (n) | artificials (as needed).
    std::size_t cols = n + ineq + n;
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(cols));
    std::vector<Rational> rhs(rows);
    basis_.assign(rows, 0);

    std::vector<std::size_t> artificial_rows;
    for (std::size_t r = 0; r < ineq; ++r) {
      for (std::size_t j = 0; j < n; ++j) t[r][j] = a_[r][j];
      t[r][n + r] = Rational(-1);
      rhs[r] = b_[r];
      if (b_[r] > 0) {
        artificial_rows.push_back(r);
      } else {
        // surplus basic at −b ≥ 0 after row negation
        for (auto& v : t[r]) v = -v;
        rhs[r] = -rhs[r];
        basis_[r] = n + r;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = ineq + i;
      t[r][i] = Rational(1);
      t[r][n + ineq + i] = Rational(1);
      rhs[r] = Rational(1);
      basis_[r] = n + ineq + i;
    }

    const std::size_t art_base = cols;
    cols += artificial_rows.size();
    for (auto& row : t) row.resize(cols);
    for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
      const std::size_t r = artificial_rows[k];
      t[r][art_base + k] = Rational(1);
      basis_[r] = art_base + k;
    }

    tableau_ = std::move(t);
    rhs_ = std::move(rhs);
    num_cols_ = cols;

    if (!artificial_rows.empty()) {
      // Phase 1: minimize the sum of artificials.
      std::vector<Rational> phase1(cols);
      for (std::size_t k = 0; k < artificial_rows.size(); ++k)
        phase1[art_base + k] = Rational(1);
      run(phase1, art_base);
      Rational art_sum(0);
      for (std::size_t r = 0; r < tableau_.size(); ++r)
        if (basis_[r] >= art_base) art_sum += rhs_[r];
      if (art_sum != 0)
        throw ContractError("LP infeasible (always-feasible instances make "
                            "the all-ones vector feasible)");
      // Pivot remaining artificials out of the basis where possible.
      for (std::size_t r = 0; r < tableau_.size(); ++r) {
        if (basis_[r] < art_base) continue;
        std::size_t enter = art_base;
        for (std::size_t j = 0; j < art_base; ++j) {
          if (tableau_[r][j] != 0) {
            enter = j;
            break;
          }
        }
        if (enter < art_base) pivot(r, enter);
        // otherwise the row is all-zero and stays degenerate at 0
      }
    }

    // Phase 2 over the original objective; artificial columns barred.
    std::vector<Rational> obj(num_cols_);
    for (std::size_t j = 0; j < n; ++j) obj[j] = c_[j];
    run(obj, art_base);

    LpSolution sol;
    sol.y.assign(n, Rational(0));
    for (std::size_t r = 0; r < tableau_.size(); ++r)
      if (basis_[r] < n) sol.y[basis_[r]] = rhs_[r];
    sol.objective = Rational(0);
    for (std::size_t j = 0; j < n; ++j) sol.objective += c_[j] * sol.y[j];
    return sol;
  }

 private:
  // Reduced costs against `obj`; Bland's rule: entering = lowest-index
  // negative reduced cost, leaving = min ratio then lowest basis index.
  void run(const std::vector<Rational>& obj, std::size_t col_limit) {
    for (;;) {
      std::vector<Rational> dual(tableau_.size());
      for (std::size_t r = 0; r < tableau_.size(); ++r) dual[r] = obj[basis_[r]];

      std::size_t enter = num_cols_;
      for (std::size_t j = 0; j < col_limit; ++j) {
        Rational reduced = obj[j];
        for (std::size_t r = 0; r < tableau_.size(); ++r)
          if (dual[r] != 0 && tableau_[r][j] != 0)
            reduced -= dual[r] * tableau_[r][j];
        if (reduced < 0) {
          enter = j;
          break;
        }
      }
      if (enter == num_cols_) return;  // optimal

      std::size_t leave = tableau_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < tableau_.size(); ++r) {
        if (tableau_[r][enter] <= 0) continue;
        const Rational ratio = rhs_[r] / tableau_[r][enter];
        if (leave == tableau_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == tableau_.size())
        throw InvariantError("LP unbounded (impossible with box constraints)");
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = tableau_[row][col];
    for (auto& v : tableau_[row]) v /= p;
    rhs_[row] /= p;
    for (std::size_t r = 0; r < tableau_.size(); ++r) {
      if (r == row) continue;
      const Rational factor = tableau_[r][col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < num_cols_; ++j)
        if (tableau_[row][j] != 0)
          tableau_[r][j] -= factor * tableau_[row][j];
      rhs_[r] -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<Rational> c_;
  std::vector<std::vector<Rational>> tableau_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t num_cols_ = 0;
};

}  // namespace

WolseyLP build_lp(const Instance& inst, std::uint64_t budget) {
  const std::size_t m = inst.item_count();
  if (m > kMaxLpItems)
    throw CapacityError("build_lp: limited to " + std::to_string(kMaxLpItems) +
                        " items");

  WolseyLP lp;
  lp.m = m;
  lp.q_tilde = Rational(inst.q());
  for (const auto& item : inst.items()) lp.costs.emplace_back(item.cost);

  const std::uint32_t total = 1u << m;
  lp.rows.reserve(total);
  for (std::uint32_t subset = 0; subset < total; ++subset) {
    WolseyRow row;
    row.subset = subset;
    row.coeff.assign(m, Rational(0));

    UnionDist dist(inst, CoverMask(inst.universe_size()), budget);
    for (std::size_t i = 0; i < m; ++i)
      if (subset & (1u << i)) dist.extend(static_cast<std::uint32_t>(i));
    const Rational f_a = dist.expected_count();

    for (std::size_t i = 0; i < m; ++i) {
      if (subset & (1u << i)) continue;
      row.coeff[i] =
          dist.expected_count_with(static_cast<std::uint32_t>(i)) - f_a;
    }
    row.rhs = lp.q_tilde - 2 * f_a;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

FeasibilityCheck check_feasible(const WolseyLP& lp,
                                const std::vector<Rational>& y) {
  if (y.size() != lp.m) throw ContractError("check_feasible: |y| != m");
  FeasibilityCheck out;
  for (const auto& v : y) {
    if (v < 0 || v > 1) {
      out.feasible = false;
      out.violated_row = ~0u;
      return out;
    }
  }
  for (const auto& row : lp.rows) {
    Rational lhs(0);
    for (std::size_t i = 0; i < lp.m; ++i)
      if (row.coeff[i] != 0) lhs += row.coeff[i] * y[i];
    if (lhs < row.rhs) {
      out.feasible = false;
      out.violated_row = row.subset;
      return out;
    }
  }
  return out;
}

std::vector<Rational> opt_policy_to_w(ExpectimaxOracle& oracle,
                                      std::uint64_t realization_budget) {
  return oracle.usage_vector(realization_budget);
}

LpSolution solve_lp(const WolseyLP& lp, const LpSolveOptions& opts) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& row : lp.rows) {
    if (!opts.include_vacuous_rows && row.rhs <= 0) continue;
    a.push_back(row.coeff);
    b.push_back(row.rhs);
  }
  ExactSimplex simplex(std::move(a), std::move(b), lp.costs);
  return simplex.solve();
}

void dump_lp(const WolseyLP& lp, std::ostream& out) {
  for (const auto& row : lp.rows) {
    out << row.subset;
    for (const auto& c : row.coeff) out << ' ' << to_string(c);
    out << ' ' << to_string(row.rhs) << '\n';
  }
}

}  // namespace ssc
