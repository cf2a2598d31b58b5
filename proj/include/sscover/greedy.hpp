#pragma once

#include <cstdint>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/instance.hpp"
#include "sscover/rational.hpp"
#include "sscover/rng.hpp"

namespace ssc {

enum class GreedyEval { exact, monte_carlo, auto_select };

struct GreedyConfig {
  GreedyEval eval = GreedyEval::auto_select;
  std::size_t mc_samples = 2048;
  std::uint64_t exact_budget = kDefaultExactBudget;
};

struct GreedyTrace {
  std::vector<std::uint32_t> picked;  // in pick order
  std::vector<double> ratios;         // F_A(j*)/c_{j*} at pick time
  std::vector<double> f_values;       // F(A) after each pick
  std::vector<Rational> f_exact;      // exact variants (exact mode only)
  std::vector<Rational> ratio_exact;
  bool exact_mode = false;
  bool reached_threshold = false;  // F(A) >= q_tilde/3 certified on exit
  std::int64_t cost = 0;

  ItemSet chosen(std::size_t m) const {
    ItemSet s(m);
    for (auto i : picked) s.set(i);
    return s;
  }
};

// Greedy maximizer for F(A) = E[g(X_A)] with g the coverage marginal on
// top of `base`: picks argmax F_A(j)/c_j until F(A) >= q_tilde/3.
// Precondition (caller-guaranteed): every full realization of `avail`
// on top of `base` reaches q_tilde. Exhausting the items before the
// threshold therefore signals a caller bug and raises ContractError in
// exact mode. Ties break toward the lowest item index; items with zero
// current marginal are never picked.
//
// auto_select runs exactly while the product distribution fits the
// budget and restarts in Monte-Carlo mode otherwise. In Monte-Carlo mode
// one batch of realizations (common random numbers) is drawn per call
// and shared by every candidate in every step.
GreedyTrace non_adapt_greedy(const Instance& inst, const CoverMask& base,
                             const ItemSet& avail, std::int64_t q_tilde,
                             const GreedyConfig& config, RngStream& rng);

}  // namespace ssc
