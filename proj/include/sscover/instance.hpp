#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscover/bitmask.hpp"
#include "sscover/errors.hpp"
#include "sscover/rational.hpp"
#include "sscover/rng.hpp"
#include "sscover/submodular.hpp"

namespace ssc {

// One support outcome of a stochastic item: a ground element (referenced
// by pool index) realized with an exact rational probability.
struct SupportEntry {
  Rational prob;
  std::uint32_t element;
};

// A stochastic item: an integer cost plus a discrete distribution over
// ground elements.
struct StochasticItem {
  std::int64_t cost = 1;
  std::vector<SupportEntry> support;
};

struct InstanceMetadata {
  std::string name;
  std::string generator;
  std::uint64_t seed = 0;
  std::string extra;  // serialized JSON object for generator-specific data
};

// Immutable problem instance: items over a shared ground-element pool,
// coverage function f, target Q = f(E). Construction validates the local
// invariants; always-feasibility is checked separately (enumeration or
// sampling) since it can be expensive.
class Instance {
 public:
  Instance(std::uint32_t universe_size, std::vector<GroundElement> pool,
           std::vector<StochasticItem> items, InstanceMetadata metadata);

  std::size_t item_count() const { return items_.size(); }
  std::uint32_t universe_size() const { return universe_size_; }
  std::int64_t q() const { return q_; }
  std::int64_t max_cost() const { return max_cost_; }
  std::int64_t total_cost() const { return total_cost_; }

  const std::vector<StochasticItem>& items() const { return items_; }
  const StochasticItem& item(std::size_t i) const { return items_[i]; }
  const std::vector<GroundElement>& pool() const { return pool_; }
  const CoverageFn& coverage() const { return coverage_; }
  const InstanceMetadata& metadata() const { return metadata_; }

  const CoverMask& cover_of(std::size_t item, std::size_t outcome) const {
    return pool_[items_[item].support[outcome].element].covers;
  }

  // Union of every outcome of every item; f of it equals Q.
  const CoverMask& full_union() const { return full_union_; }

  ItemSet all_items() const { return ItemSet::full(items_.size()); }

  // Draw one outcome index for a single item.
  std::uint32_t sample_outcome(std::size_t item, RngStream& rng) const;

  // Number of full realizations (saturating at cap).
  std::uint64_t realization_space(std::uint64_t cap) const;

 private:
  std::uint32_t universe_size_;
  std::vector<GroundElement> pool_;
  std::vector<StochasticItem> items_;
  InstanceMetadata metadata_;
  CoverageFn coverage_;
  CoverMask full_union_;
  std::int64_t q_ = 0;
  std::int64_t max_cost_ = 1;
  std::int64_t total_cost_ = 0;
  // Per item: common denominator and cumulative numerator thresholds for
  // outcome sampling with exact probabilities.
  struct SamplingTable {
    std::uint64_t den;
    bool uniform;  // den == support size, cum is 1..den
    std::vector<std::uint64_t> cum;
  };
  std::vector<SamplingTable> sampling_;
};

// An assignment of one support outcome per item; -1 where not drawn.
struct Realization {
  std::vector<std::int32_t> outcomes;

  explicit Realization(std::size_t m = 0) : outcomes(m, -1) {}
  bool complete() const {
    for (auto o : outcomes)
      if (o < 0) return false;
    return true;
  }
};

Realization sample_realization(const Instance& inst, RngStream& rng);

// Union of realized covers over the items in `subset` (all must be drawn).
CoverMask covered_mask(const Instance& inst, const Realization& real,
                       const ItemSet& subset);

inline constexpr std::uint64_t kDefaultExactBudget = 1'000'000;

// F(A) = E[f(X_A)], exact over the product distribution. Throws
// CapacityError when the product of support sizes exceeds the budget.
Rational expected_coverage_exact(const Instance& inst, const ItemSet& a,
                                 std::uint64_t budget = kDefaultExactBudget);

double expected_coverage_mc(const Instance& inst, const ItemSet& a,
                            std::size_t samples, RngStream& rng);

// Always-feasibility: every full realization X has f(X) = Q. Verified by
// enumeration when the realization space fits the budget, otherwise by
// sampling `sample_trials` draws.
struct FeasibilityReport {
  bool feasible = true;
  bool exhaustive = false;
  std::uint64_t checked = 0;
};
FeasibilityReport check_always_feasible(const Instance& inst,
                                        std::uint64_t enum_budget,
                                        std::size_t sample_trials,
                                        RngStream& rng);

// Appends the deterministic completion item: single outcome covering the
// full union, cost 1 + sum of existing costs.
Instance add_completion_item(const Instance& inst);

// Example 4.1 shape: X_1 uniform over the n sets U \ {e}, plus n
// deterministic singletons; unit costs; Q = n.
Instance gen_singleton_gap(std::uint32_t n);

struct RandomSetCoverParams {
  std::uint32_t n = 6;
  std::uint32_t m = 5;
  std::uint32_t max_support = 3;
  double density = 0.5;
  std::int64_t max_cost = 1;
  std::uint64_t seed = 1;
};
Instance gen_random_setcover(const RandomSetCoverParams& params);

// Canonical JSON (ordered fields; round-trip stable).
nlohmann::ordered_json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::ordered_json& j);
std::string instance_to_string(const Instance& inst);
Instance instance_from_string(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace ssc
