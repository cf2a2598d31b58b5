#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/errors.hpp"
#include "sscover/instance.hpp"

namespace ssc {

// Round-boundary information gate. The harness owns the hidden
// realization; a policy only ever sees outcomes of items that were part
// of a committed round plan and whose turn was reached before the round
// threshold. Peeking attempts are recorded and rejected.
class ObservationGate {
 public:
  ObservationGate(const Instance& inst, Realization hidden)
      : inst_(&inst),
        hidden_(std::move(hidden)),
        consumed_(inst.item_count()),
        mask_(inst.universe_size()) {
    if (!hidden_.complete())
      throw ContractError("gate requires a complete hidden realization");
  }

  const Instance& instance() const { return *inst_; }

  // Reveal order, as (item, outcome) pairs.
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& revealed() const {
    return revealed_;
  }
  const ItemSet& consumed_items() const { return consumed_; }
  const CoverMask& revealed_mask() const { return mask_; }
  std::int64_t revealed_value() const {
    return static_cast<std::int64_t>(mask_.count());
  }

  std::uint32_t outcome_of(std::uint32_t item) const {
    if (!consumed_.test(item)) {
      ++violation_attempts_;
      throw ContractError("gate: outcome requested before reveal");
    }
    return static_cast<std::uint32_t>(hidden_.outcomes[item]);
  }

  int violation_attempts() const { return violation_attempts_; }
  std::size_t rounds_committed() const { return rounds_committed_; }

  struct RoundOutcome {
    std::size_t consumed = 0;
    std::int64_t cost = 0;
    std::int64_t value_after = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> revealed;
  };

  // Commits (ordering, tau) and executes within-round stopping: items are
  // revealed one by one in the committed order until coverage reaches tau.
  // The ordering must be a permutation of the not-yet-consumed items.
  RoundOutcome run_committed_round(const std::vector<std::uint32_t>& ordering,
                                   std::int64_t tau) {
    if (tau < 0 || tau > inst_->q())
      throw ContractError("gate: threshold outside [0, Q]");
    ItemSet seen(inst_->item_count());
    for (std::uint32_t i : ordering) {
      if (i >= inst_->item_count() || seen.test(i) || consumed_.test(i))
        throw ContractError("gate: committed ordering is not a permutation "
                            "of the remaining items");
      seen.set(i);
    }
    if (seen.count() + consumed_.count() != inst_->item_count())
      throw ContractError("gate: committed ordering omits remaining items");

    ++rounds_committed_;
    RoundOutcome out;
    for (std::uint32_t i : ordering) {
      if (revealed_value() >= tau) break;
      const auto o = static_cast<std::uint32_t>(hidden_.outcomes[i]);
      consumed_.set(i);
      mask_ |= inst_->cover_of(i, o);
      revealed_.emplace_back(i, o);
      out.revealed.emplace_back(i, o);
      out.cost += inst_->item(i).cost;
      ++out.consumed;
    }
    out.value_after = revealed_value();
    return out;
  }

 private:
  const Instance* inst_;
  Realization hidden_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> revealed_;
  ItemSet consumed_;
  CoverMask mask_;
  std::size_t rounds_committed_ = 0;
  mutable int violation_attempts_ = 0;
};

}  // namespace ssc
