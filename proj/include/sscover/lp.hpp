#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sscover/instance.hpp"
#include "sscover/policies.hpp"
#include "sscover/rational.hpp"

namespace ssc {

// The Wolsey-style LP over F(A) = E[f(X_A)]:
//   min Σ c_i y_i   s.t.  Σ_{i∉A} F_A(i)·y_i ≥ Q̃ − 2F(A)  for all A ⊆ [m],
//   0 ≤ y ≤ 1.
// All entries are exact rationals; rows are indexed by the subset bitmask.
struct WolseyRow {
  std::uint32_t subset = 0;
  std::vector<Rational> coeff;  // length m; zero at positions i ∈ A
  Rational rhs;
};

struct WolseyLP {
  std::size_t m = 0;
  std::vector<Rational> costs;
  std::vector<WolseyRow> rows;  // 2^m rows, subset ascending
  Rational q_tilde;
};

inline constexpr std::size_t kMaxLpItems = 12;

WolseyLP build_lp(const Instance& inst,
                  std::uint64_t budget = kDefaultExactBudget);

struct FeasibilityCheck {
  bool feasible = true;
  // subset bitmask of the violated row, or ~0u for a box violation
  std::optional<std::uint32_t> violated_row;
};

FeasibilityCheck check_feasible(const WolseyLP& lp,
                                const std::vector<Rational>& y);

std::vector<Rational> opt_policy_to_w(
    ExpectimaxOracle& oracle,
    std::uint64_t realization_budget = kDefaultExactBudget);

struct LpSolution {
  Rational objective;
  std::vector<Rational> y;
};

struct LpSolveOptions {
  // Rows with rhs <= 0 are satisfied by any y >= 0 and never bind; they
  // are dropped by default. Keeping them must not change the optimum.
  bool include_vacuous_rows = false;
};

// Exact two-phase simplex with Bland's rule.
LpSolution solve_lp(const WolseyLP& lp, const LpSolveOptions& opts = {});

// Plain-text dump: one row per line: subset bitmask, coefficients, RHS.
void dump_lp(const WolseyLP& lp, std::ostream& out);

}  // namespace ssc
