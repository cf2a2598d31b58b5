#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/errors.hpp"
#include "sscover/instance.hpp"
#include "sscover/rational.hpp"

namespace ssc {

// Exact distribution of the realized union mask of a growing item set,
// seeded with a deterministic base mask. Entries with equal masks are
// merged, which keeps the support far below the raw product bound on
// coverage instances.
class UnionDist {
 public:
  UnionDist(const Instance& inst, CoverMask base,
            std::uint64_t budget = kDefaultExactBudget)
      : inst_(&inst), budget_(budget) {
    entries_.emplace_back(std::move(base), Rational(1));
  }

  const std::vector<std::pair<CoverMask, Rational>>& entries() const {
    return entries_;
  }

  // E[|mask|] over the current distribution.
  Rational expected_count() const {
    Rational total(0);
    for (const auto& [mask, p] : entries_) total += p * Rational(mask.count());
    return total;
  }

  // E[|mask ∪ X_item|] without materializing the extension.
  Rational expected_count_with(std::uint32_t item) const {
    check_budget(inst_->item(item).support.size());
    Rational total(0);
    for (const auto& [mask, p] : entries_) {
      for (const auto& entry : inst_->item(item).support) {
        total += p * entry.prob *
                 Rational(mask.count_or(inst_->pool()[entry.element].covers));
      }
    }
    return total;
  }

  void extend(std::uint32_t item) {
    check_budget(inst_->item(item).support.size());
    std::vector<std::pair<CoverMask, Rational>> next;
    next.reserve(entries_.size() * inst_->item(item).support.size());
    for (const auto& [mask, p] : entries_) {
      for (const auto& entry : inst_->item(item).support) {
        next.emplace_back(mask | inst_->pool()[entry.element].covers,
                          p * entry.prob);
      }
    }
    entries_ = merge(std::move(next));
  }

 private:
  void check_budget(std::size_t support) const {
    if (entries_.size() * support > budget_) {
      throw CapacityError(
          "exact enumeration budget exceeded; use Monte-Carlo mode");
    }
  }

  static std::vector<std::pair<CoverMask, Rational>> merge(
      std::vector<std::pair<CoverMask, Rational>> v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<CoverMask, Rational>> out;
    for (auto& e : v) {
      if (!out.empty() && out.back().first == e.first) {
        out.back().second += e.second;
      } else {
        out.push_back(std::move(e));
      }
    }
    return out;
  }

  const Instance* inst_;
  std::uint64_t budget_;
  std::vector<std::pair<CoverMask, Rational>> entries_;
};

}  // namespace ssc
