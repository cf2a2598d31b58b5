#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/instance.hpp"
#include "sscover/rational.hpp"
#include "sscover/rng.hpp"

namespace ssc {

// Exact optimal adaptive policy by memoized expectimax:
//   V(state) = 0 when covered, else min_i c_i + Σ_o p_io · V(state + (i,o)).
// The value depends on the realized (item, outcome) pairs only through the
// chosen item set and the covered mask, which is the memo key. Search is
// bounded with exact lower bounds and an upper bound from the adaptive
// greedy policy, so values are exact rationals wherever they matter.
class ExpectimaxOracle {
 public:
  explicit ExpectimaxOracle(const Instance& inst,
                            std::size_t state_budget = std::size_t(1) << 22);

  const Rational& expected_cost();

  // Optimal first pick at a state; lowest index among exact minimizers.
  std::uint32_t decision(const ItemSet& chosen, const CoverMask& covered);

  // w_i = Pr over realizations that the policy picks item i, exact via
  // full realization enumeration.
  std::vector<Rational> usage_vector(
      std::uint64_t realization_budget = kDefaultExactBudget);

  std::size_t state_count() const { return memo_.size(); }
  const Instance& instance() const { return *inst_; }

 private:
  struct Key {
    ItemSet chosen;
    CoverMask covered;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return Bitset::Hash{}(k.chosen) * 1000003u ^ Bitset::Hash{}(k.covered);
    }
  };
  struct Entry {
    Rational value;
    bool exact = false;  // otherwise `value` is a proven lower bound
  };

  // Returns the exact value if it is < beta, otherwise a lower bound >= beta.
  Rational value(const Key& key, const Rational& beta, bool* exact);
  Rational state_lower_bound(const Key& key) const;

  const Instance* inst_;
  std::size_t state_budget_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
  std::unordered_map<Key, std::uint32_t, KeyHash> decision_cache_;
  std::optional<Rational> root_value_;
  std::int64_t max_outcome_gain_ = 1;
  std::int64_t min_cost_ = 1;
};

// One adaptive-greedy trial against a fixed realization: repeatedly pick
// the unchosen item with the best expected marginal per cost given what
// has been observed, until coverage reaches Q. Returns the cost; the
// picks are appended to `picked` when provided.
std::int64_t adaptive_greedy_trial(const Instance& inst, const Realization& real,
                                   std::vector<std::uint32_t>* picked = nullptr);

// Exact expected cost of the adaptive greedy policy (memoized policy
// evaluation; capacity-guarded).
Rational adaptive_greedy_exact_cost(const Instance& inst,
                                    std::size_t state_budget = std::size_t(1) << 22);

// Runs `ordering` against a realization, consuming a prefix until f = Q;
// returns its cost including the crossing item.
std::int64_t exec_nonadaptive(const Instance& inst,
                              const std::vector<std::uint32_t>& ordering,
                              const Realization& real);

// Exact expected stopping cost of an ordering over the product law.
Rational exec_nonadaptive_exact_cost(const Instance& inst,
                                     const std::vector<std::uint32_t>& ordering,
                                     std::uint64_t budget = kDefaultExactBudget);

struct BruteForceResult {
  std::vector<std::uint32_t> ordering;
  Rational expected_cost;
};

// Enumerates all m! orderings (m <= 8) and returns the exact minimizer;
// ties resolve to the lexicographically smallest ordering.
BruteForceResult best_nonadaptive_bruteforce(
    const Instance& inst, std::size_t max_items = 8,
    std::uint64_t budget = kDefaultExactBudget);

// Enumerates full realizations with their exact probabilities; the
// callback receives (realization, probability).
void for_each_realization(
    const Instance& inst, std::uint64_t budget,
    const std::function<void(const Realization&, const Rational&)>& fn);

}  // namespace ssc
