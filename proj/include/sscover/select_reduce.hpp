#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscover/bitmask.hpp"
#include "sscover/gate.hpp"
#include "sscover/greedy.hpp"
#include "sscover/instance.hpp"
#include "sscover/rng.hpp"

namespace ssc {

// Knobs for the r-round machinery. Defaults are the analysis constants;
// logs are taken base 2 and ceilinged, with floors at 1.
struct AlgoConsts {
  double lambda_mult = 12.0;        // Λ = lambda_mult · ceil(log Q)
  double gamma_mult = 2.0;          // Γ = gamma_mult · ceil(log mC)
  double xi_mult = 6.0;             // Ξ = ceil(xi_mult · α)
  double alpha_mult = 2.0;          // α = alpha_mult · Q^{1/r}
  double log_base = 2.0;
  double rejection_cap_factor = 64.0;  // max_trials = factor · (mC)^2

  std::size_t lambda(std::int64_t q) const;
  std::size_t gamma(std::int64_t m_times_c) const;
  std::size_t xi(double alpha) const;
  std::uint64_t rejection_cap(std::int64_t m_times_c) const;
};

nlohmann::ordered_json to_json(const AlgoConsts& c);

// Draws realizations of base = cond_items ∪ free_items from the product
// law conditioned on an event over the cond part. Rejection sampling;
// throws RejectionFailure past max_trials per draw.
//
// Two predicate forms:
//  - a generic function of the cond part's covered mask;
//  - a count threshold, accepting iff |event_base ∪ cond draw| <= max_count.
// The count form is the deficit event E_k; it is monotone decreasing in
// the drawn mask, so a draw is rejected as soon as the partial union
// passes the threshold, and a draw whose certainly-covered points already
// pass it is refused up front (the event has probability zero).
class ConditionalSampler {
 public:
  ConditionalSampler(const Instance& inst, ItemSet cond_items,
                     ItemSet free_items,
                     std::function<bool(const CoverMask&)> predicate,
                     std::uint64_t max_trials);

  ConditionalSampler(const Instance& inst, ItemSet cond_items,
                     ItemSet free_items, CoverMask event_base,
                     std::size_t max_count, std::uint64_t max_trials);

  struct Draw {
    // Covered mask of event_base plus the full base realization.
    CoverMask base_mask;
    std::uint64_t trials = 0;  // unconditional draws consumed
  };
  Draw sample(RngStream& rng) const;

  // Exact: no realization of the cond part satisfies the event.
  bool event_impossible() const { return impossible_; }

  const ItemSet& base() const { return base_; }
  std::uint64_t max_trials() const { return max_trials_; }

 private:
  void index_items(const Instance& inst, const ItemSet& cond_items);

  const Instance* inst_;
  std::vector<std::size_t> cond_list_;
  std::vector<std::size_t> free_list_;
  ItemSet base_;
  std::function<bool(const CoverMask&)> predicate_;  // empty in count form
  CoverMask event_base_;
  std::size_t max_count_ = 0;
  bool count_form_ = false;
  bool impossible_ = false;
  std::uint64_t max_trials_;
  // flattened draw loop: deterministic cond items folded into a static
  // mask, random ones listed with their outcome masks
  std::size_t words_ = 0;
  std::vector<std::uint64_t> static_words_;
  struct DynItem {
    std::size_t item;
    std::vector<const std::uint64_t*> outcomes;
  };
  std::vector<DynItem> dyn_;
};

// Spec-level rejection sampler over full realizations of `base` with a
// realization predicate.
Realization conditional_sample(const Instance& inst, const ItemSet& base,
                               const std::function<bool(const Realization&)>& predicate,
                               std::uint64_t max_trials, RngStream& rng,
                               std::uint64_t* trials_out = nullptr);

struct SelectResult {
  std::vector<std::uint32_t> order;  // first-pick order across iterations
  ItemSet chosen;
  std::int64_t cost = 0;
  std::size_t iterations = 0;
  std::size_t zero_deficit_samples = 0;
  std::size_t greedy_calls = 0;  // distinct conditioning masks seen
};

// The Select primitive: Ξ = ceil(xi_mult·α) iterations, each sampling a
// realization S_i of the conditioning set and greedily covering its
// deficit Δ(S_i) = q_g − g(S_i) over `avail`. Every iteration greedes
// over the full `avail` set (the chosen set is the union, order recorded
// by first pick). The greedy pick for a sampled realization is a
// deterministic function of its covered mask, so repeated masks reuse
// the previous result.
SelectResult select(const Instance& inst, const CoverMask& t_prev,
                    std::int64_t q_g, const ItemSet& avail,
                    const ConditionalSampler& sampler, double alpha,
                    const AlgoConsts& consts, const GreedyConfig& greedy_cfg,
                    RngStream& rng);

// Round-k deficit state: T_prev realized so far, Q_k = Q − f(T_prev).
struct DeficitState {
  CoverMask t_prev;
  std::int64_t q_k = 0;
  int round = 1;
  int total_rounds = 1;
};

struct ReduceResult {
  std::vector<std::uint32_t> ordering;       // S_Γ in insertion order
  std::vector<std::size_t> phase_boundaries; // |S_p| after each phase run
  std::size_t phases_run = 0;
  bool early_stop = false;  // conditioning event became (near-)impossible
  std::string note;
};

// The Reduce subroutine: Γ phases of Λ Select calls with α =
// alpha_mult·Q^{1/r}, phase p conditioning on the failure event
// E_k(S_{p−1}): deficit of S_{p−1} still at least Q_k/Q^{1/r}. A
// rejection-sampling failure ends the phase loop early (the event has
// negligible probability) and is reported in the result.
ReduceResult reduce(const Instance& inst, const ItemSet& avail,
                    const DeficitState& state, const AlgoConsts& consts,
                    const GreedyConfig& greedy_cfg, RngStream& rng);

// Event E_k(S): deficit(S mask) ≥ Q_k / Q^{1/r}.
bool deficit_event(const Instance& inst, const CoverMask& t_prev,
                   std::int64_t q_k, int total_rounds, const CoverMask& s_mask);

struct RoundPlan {
  std::vector<std::uint32_t> ordering;
  std::int64_t tau = 0;
  std::vector<std::size_t> phase_boundaries;
  std::size_t reduce_prefix = 0;  // items of `ordering` chosen by reduce
};

struct RoundRecord {
  RoundPlan plan;
  std::size_t consumed = 0;
  std::int64_t cost = 0;
  std::int64_t value_after = 0;
};

struct RunRecord {
  std::vector<RoundRecord> rounds;
  std::int64_t total_cost = 0;
  std::int64_t final_value = 0;
};

nlohmann::ordered_json to_json(const RunRecord& rec);

// Threshold schedule: τ_k = ceil(Q − Q^{(r−k)/r}) for k < r; the final
// round is forced to τ_r = Q so the returned set is always feasible.
std::int64_t round_threshold(std::int64_t q, int k, int r);

// The r-round adaptive driver. Round k plans an ordering with reduce on
// the marginal over what the gate revealed so far, appends the remaining
// items in ascending index order, commits (ordering, τ_k) to the gate and
// lets it execute within-round stopping.
RunRecord r_round_adaptive(const Instance& inst, int r, RngStream& algo_rng,
                           ObservationGate& gate, const AlgoConsts& consts,
                           const GreedyConfig& greedy_cfg);

}  // namespace ssc
