#include "sscover/policies.hpp"

#include <algorithm>
#include <functional>

#include "sscover/errors.hpp"
#include "sscover/union_dist.hpp"

namespace ssc {

namespace {

// Expected marginal of item i on top of `covered`, times 1 (exact).
Rational expected_marginal(const Instance& inst, const CoverMask& covered,
                           std::size_t item) {
  Rational gain(0);
  const auto cov = static_cast<std::int64_t>(covered.count());
  for (const auto& entry : inst.item(item).support) {
    const auto with = static_cast<std::int64_t>(
        covered.count_or(inst.pool()[entry.element].covers));
    gain += entry.prob * Rational(with - cov);
  }
  return gain;
}

// Greedy pick given observations; InvariantError when nothing can help
// (impossible on always-feasible instances).
std::size_t greedy_decision(const Instance& inst, const ItemSet& chosen,
                            const CoverMask& covered) {
  std::int64_t best = -1;
  Rational best_gain;
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    if (chosen.test(i)) continue;
    Rational gain = expected_marginal(inst, covered, i);
    if (gain <= 0) continue;
    if (best < 0 ||
        gain * inst.item(best).cost > best_gain * inst.item(i).cost) {
      best = static_cast<std::int64_t>(i);
      best_gain = gain;
    }
  }
  if (best < 0)
    throw InvariantError("adaptive greedy stuck: no item has positive marginal");
  return static_cast<std::size_t>(best);
}

}  // namespace

ExpectimaxOracle::ExpectimaxOracle(const Instance& inst, std::size_t state_budget)
    : inst_(&inst), state_budget_(state_budget) {
  min_cost_ = inst.item(0).cost;
  for (const auto& item : inst.items()) min_cost_ = std::min(min_cost_, item.cost);
  for (const auto& item : inst.items()) {
    for (const auto& entry : item.support) {
      max_outcome_gain_ = std::max(
          max_outcome_gain_,
          static_cast<std::int64_t>(inst.pool()[entry.element].covers.count()));
    }
  }
}

Rational ExpectimaxOracle::state_lower_bound(const Key& key) const {
  const std::int64_t deficit =
      inst_->q() - static_cast<std::int64_t>(key.covered.count());
  if (deficit <= 0) return Rational(0);
  const std::int64_t picks_needed =
      (deficit + max_outcome_gain_ - 1) / max_outcome_gain_;
  return Rational(picks_needed * min_cost_);
}

Rational ExpectimaxOracle::value(const Key& key, const Rational& beta,
                                 bool* exact_out) {
  if (static_cast<std::int64_t>(key.covered.count()) == inst_->q()) {
    *exact_out = true;
    return Rational(0);
  }

  auto it = memo_.find(key);
  if (it != memo_.end()) {
    if (it->second.exact) {
      *exact_out = true;
      return it->second.value;
    }
    if (it->second.value >= beta) {
      *exact_out = false;
      return it->second.value;
    }
  }

  const Rational lb = state_lower_bound(key);
  if (lb >= beta) {
    *exact_out = false;
    if (it == memo_.end()) {
      if (memo_.size() >= state_budget_)
        throw CapacityError("expectimax state budget exceeded");
      memo_.emplace(key, Entry{lb, false});
    } else if (lb > it->second.value) {
      it->second.value = lb;
    }
    return lb;
  }

  Rational beta_cur = beta;
  std::optional<Rational> best;

  for (std::size_t i = 0; i < inst_->item_count(); ++i) {
    if (key.chosen.test(i)) continue;
    const auto& item = inst_->item(i);

    // An item whose every outcome is already covered is strictly
    // dominated (positive cost, no coverage, no usable information).
    bool useful = false;
    for (const auto& entry : item.support) {
      if (!inst_->pool()[entry.element].covers.is_subset_of(key.covered)) {
        useful = true;
        break;
      }
    }
    if (!useful) continue;

    if (Rational(item.cost) >= beta_cur) continue;

    Key child_key{key.chosen, key.covered};
    child_key.chosen.set(i);

    Rational expected(item.cost);
    Rational remaining(1);
    bool pruned = false;
    for (const auto& entry : item.support) {
      remaining -= entry.prob;
      const Rational slack = beta_cur - expected;
      if (slack <= 0) {
        pruned = true;
        break;
      }
      child_key.covered = key.covered | inst_->pool()[entry.element].covers;
      const Rational child_beta = slack / entry.prob;
      bool child_exact = false;
      const Rational v = value(child_key, child_beta, &child_exact);
      expected += entry.prob * v;
      if (!child_exact) {  // candidate's value is at least beta_cur
        pruned = true;
        break;
      }
    }
    if (!pruned && expected < beta_cur) {
      best = expected;
      beta_cur = expected;
    }
  }

  if (memo_.size() >= state_budget_ && memo_.find(key) == memo_.end())
    throw CapacityError("expectimax state budget exceeded");

  if (best.has_value()) {
    memo_[key] = Entry{*best, true};
    *exact_out = true;
    return *best;
  }
  // Every candidate was proven >= the original beta.
  auto& entry = memo_[key];
  if (!entry.exact && entry.value < beta) entry = Entry{beta, false};
  *exact_out = false;
  return entry.value;
}

const Rational& ExpectimaxOracle::expected_cost() {
  if (root_value_.has_value()) return *root_value_;

  Rational upper(inst_->total_cost());
  try {
    upper = adaptive_greedy_exact_cost(*inst_, state_budget_);
  } catch (const CapacityError&) {
    // keep the trivial pick-everything bound
  }

  Key root{ItemSet(inst_->item_count()), CoverMask(inst_->universe_size())};
  bool exact = false;
  const Rational v = value(root, upper + 1, &exact);
  if (!exact)
    throw InvariantError("expectimax: upper bound was not achievable");
  root_value_ = v;
  return *root_value_;
}

std::uint32_t ExpectimaxOracle::decision(const ItemSet& chosen,
                                         const CoverMask& covered) {
  Key key{chosen, covered};
  if (auto it = decision_cache_.find(key); it != decision_cache_.end())
    return it->second;
  if (static_cast<std::int64_t>(covered.count()) == inst_->q())
    throw ContractError("decision requested at a covered state");

  // Large cutoff so every candidate evaluates exactly.
  const Rational big = Rational(inst_->total_cost()) + 1;
  std::int64_t best = -1;
  Rational best_value;
  for (std::size_t i = 0; i < inst_->item_count(); ++i) {
    if (chosen.test(i)) continue;
    const auto& item = inst_->item(i);
    bool useful = false;
    for (const auto& entry : item.support)
      if (!inst_->pool()[entry.element].covers.is_subset_of(covered)) {
        useful = true;
        break;
      }
    if (!useful) continue;

    Key child{chosen, covered};
    child.chosen.set(i);
    Rational expected(item.cost);
    for (const auto& entry : item.support) {
      child.covered = covered | inst_->pool()[entry.element].covers;
      bool exact = false;
      expected += entry.prob * value(child, big, &exact);
    }
    if (best < 0 || expected < best_value) {
      best = static_cast<std::int64_t>(i);
      best_value = expected;
    }
  }
  if (best < 0) throw InvariantError("decision: no useful item at state");
  decision_cache_[key] = static_cast<std::uint32_t>(best);
  return static_cast<std::uint32_t>(best);
}

std::vector<Rational> ExpectimaxOracle::usage_vector(
    std::uint64_t realization_budget) {
  expected_cost();  // make sure the policy exists
  std::vector<Rational> w(inst_->item_count(), Rational(0));
  for_each_realization(
      *inst_, realization_budget,
      [&](const Realization& real, const Rational& prob) {
        ItemSet chosen(inst_->item_count());
        CoverMask covered(inst_->universe_size());
        while (static_cast<std::int64_t>(covered.count()) != inst_->q()) {
          const std::uint32_t i = decision(chosen, covered);
          chosen.set(i);
          covered |= inst_->cover_of(i, static_cast<std::size_t>(real.outcomes[i]));
          w[i] += prob;
        }
      });
  return w;
}

std::int64_t adaptive_greedy_trial(const Instance& inst, const Realization& real,
                                   std::vector<std::uint32_t>* picked) {
  ItemSet chosen(inst.item_count());
  CoverMask covered(inst.universe_size());
  std::int64_t cost = 0;
  while (static_cast<std::int64_t>(covered.count()) != inst.q()) {
    const std::size_t i = greedy_decision(inst, chosen, covered);
    chosen.set(i);
    covered |= inst.cover_of(i, static_cast<std::size_t>(real.outcomes[i]));
    cost += inst.item(i).cost;
    if (picked) picked->push_back(static_cast<std::uint32_t>(i));
  }
  return cost;
}

Rational adaptive_greedy_exact_cost(const Instance& inst,
                                    std::size_t state_budget) {
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
  std::unordered_map<Key, Rational, KeyHash> memo;

  std::function<Rational(const Key&)> eval = [&](const Key& key) -> Rational {
    if (static_cast<std::int64_t>(key.covered.count()) == inst.q())
      return Rational(0);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (memo.size() >= state_budget)
      throw CapacityError("adaptive greedy evaluation: state budget exceeded");

    const std::size_t i = greedy_decision(inst, key.chosen, key.covered);
    Rational total(inst.item(i).cost);
    Key child{key.chosen, key.covered};
    child.chosen.set(i);
    for (const auto& entry : inst.item(i).support) {
      child.covered = key.covered | inst.pool()[entry.element].covers;
      total += entry.prob * eval(child);
    }
    memo.emplace(key, total);
    return total;
  };

  Key root{ItemSet(inst.item_count()), CoverMask(inst.universe_size())};
  return eval(root);
}

std::int64_t exec_nonadaptive(const Instance& inst,
                              const std::vector<std::uint32_t>& ordering,
                              const Realization& real) {
  if (ordering.size() != inst.item_count())
    throw ContractError("exec_nonadaptive: ordering must cover all items");
  CoverMask covered(inst.universe_size());
  std::int64_t cost = 0;
  for (std::uint32_t i : ordering) {
    if (static_cast<std::int64_t>(covered.count()) >= inst.q()) break;
    covered |= inst.cover_of(i, static_cast<std::size_t>(real.outcomes[i]));
    cost += inst.item(i).cost;
  }
  if (static_cast<std::int64_t>(covered.count()) != inst.q())
    throw InvariantError("exec_nonadaptive: full ordering did not reach Q");
  return cost;
}

Rational exec_nonadaptive_exact_cost(const Instance& inst,
                                     const std::vector<std::uint32_t>& ordering,
                                     std::uint64_t budget) {
  if (ordering.size() != inst.item_count())
    throw ContractError("exec_nonadaptive: ordering must cover all items");

  // alive = distribution of prefix union masks that have not reached Q;
  // item j's cost is paid exactly when the prefix before it is alive.
  std::vector<std::pair<CoverMask, Rational>> alive;
  alive.emplace_back(CoverMask(inst.universe_size()), Rational(1));
  Rational total(0);

  for (std::uint32_t j : ordering) {
    Rational alive_prob(0);
    for (const auto& [mask, p] : alive) alive_prob += p;
    if (alive_prob == 0) break;
    total += Rational(inst.item(j).cost) * alive_prob;

    const auto& support = inst.item(j).support;
    if (alive.size() * support.size() > budget)
      throw CapacityError("exact stopping-cost budget exceeded");
    std::vector<std::pair<CoverMask, Rational>> next;
    next.reserve(alive.size() * support.size());
    for (const auto& [mask, p] : alive) {
      for (const auto& entry : support) {
        CoverMask u = mask | inst.pool()[entry.element].covers;
        if (static_cast<std::int64_t>(u.count()) >= inst.q()) continue;
        next.emplace_back(std::move(u), p * entry.prob);
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    alive.clear();
    for (auto& e : next) {
      if (!alive.empty() && alive.back().first == e.first)
        alive.back().second += e.second;
      else
        alive.push_back(std::move(e));
    }
  }
  return total;
}

BruteForceResult best_nonadaptive_bruteforce(const Instance& inst,
                                             std::size_t max_items,
                                             std::uint64_t budget) {
  if (inst.item_count() > max_items)
    throw CapacityError("brute-force ordering enumeration limited to " +
                        std::to_string(max_items) + " items");
  std::vector<std::uint32_t> perm(inst.item_count());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = static_cast<std::uint32_t>(i);

  BruteForceResult best;
  bool first = true;
  do {
    Rational cost = exec_nonadaptive_exact_cost(inst, perm, budget);
    if (first || cost < best.expected_cost) {
      best.ordering = perm;
      best.expected_cost = cost;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

void for_each_realization(
    const Instance& inst, std::uint64_t budget,
    const std::function<void(const Realization&, const Rational&)>& fn) {
  if (inst.realization_space(budget) > budget)
    throw CapacityError("realization enumeration budget exceeded");

  Realization real(inst.item_count());
  std::function<void(std::size_t, Rational)> walk = [&](std::size_t i,
                                                        Rational prob) {
    if (i == inst.item_count()) {
      fn(real, prob);
      return;
    }
    const auto& support = inst.item(i).support;
    for (std::size_t o = 0; o < support.size(); ++o) {
      real.outcomes[i] = static_cast<std::int32_t>(o);
      walk(i + 1, prob * support[o].prob);
    }
    real.outcomes[i] = -1;
  };
  walk(0, Rational(1));
}

}  // namespace ssc
