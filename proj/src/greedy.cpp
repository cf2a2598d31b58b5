#include "sscover/greedy.hpp"

#include <algorithm>

#include "sscover/errors.hpp"
#include "sscover/union_dist.hpp"

namespace ssc {

namespace {

GreedyTrace run_exact(const Instance& inst, const CoverMask& base,
                      const std::vector<std::size_t>& avail,
                      std::int64_t q_tilde, const GreedyConfig& config) {
  GreedyTrace trace;
  trace.exact_mode = true;

  UnionDist dist(inst, base, config.exact_budget);
  const Rational f_base(base.count());
  std::vector<bool> picked_flag(inst.item_count(), false);

  for (;;) {
    const Rational f_a = dist.expected_count() - f_base;
    if (3 * f_a >= q_tilde) {
      trace.reached_threshold = true;
      return trace;
    }

    std::int64_t best = -1;
    Rational best_marginal;
    for (std::size_t j : avail) {
      if (picked_flag[j]) continue;
      const Rational marginal =
          dist.expected_count_with(static_cast<std::uint32_t>(j)) - f_base - f_a;
      if (marginal <= 0) continue;
      // marginal/c_j > best_marginal/c_best, exact cross-multiplication
      if (best < 0 || marginal * inst.item(best).cost >
                          best_marginal * inst.item(j).cost) {
        best = static_cast<std::int64_t>(j);
        best_marginal = marginal;
      }
    }
    if (best < 0) {
      throw ContractError(
          "non_adapt_greedy: items exhausted before reaching q_tilde/3 "
          "(q_tilde misreported by caller)");
    }

    picked_flag[best] = true;
    dist.extend(static_cast<std::uint32_t>(best));
    const Rational f_after = dist.expected_count() - f_base;
    const Rational ratio = best_marginal / inst.item(best).cost;
    trace.picked.push_back(static_cast<std::uint32_t>(best));
    trace.cost += inst.item(best).cost;
    trace.f_exact.push_back(f_after);
    trace.ratio_exact.push_back(ratio);
    trace.f_values.push_back(to_double(f_after));
    trace.ratios.push_back(to_double(ratio));
  }
}

GreedyTrace run_monte_carlo(const Instance& inst, const CoverMask& base,
                            const std::vector<std::size_t>& avail,
                            std::int64_t q_tilde, const GreedyConfig& config,
                            RngStream& rng) {
  GreedyTrace trace;
  trace.exact_mode = false;

  const std::size_t batch = std::max<std::size_t>(1, config.mc_samples);
  const std::size_t words = CoverMask(inst.universe_size()).word_count();

  // One batch of realizations shared by every step and candidate.
  std::vector<std::vector<const std::uint64_t*>> sampled(avail.size());
  for (std::size_t idx = 0; idx < avail.size(); ++idx) {
    sampled[idx].resize(batch);
    for (std::size_t s = 0; s < batch; ++s) {
      sampled[idx][s] =
          inst.cover_of(avail[idx], inst.sample_outcome(avail[idx], rng)).data();
    }
  }

  std::vector<std::uint64_t> cur(batch * words);
  for (std::size_t s = 0; s < batch; ++s)
    std::copy(base.data(), base.data() + words, cur.begin() + s * words);
  std::vector<std::int64_t> cur_count(batch,
                                      static_cast<std::int64_t>(base.count()));
  std::int64_t sum_cur = static_cast<std::int64_t>(base.count()) *
                         static_cast<std::int64_t>(batch);
  const std::int64_t base_total = sum_cur;

  std::vector<bool> picked_flag(inst.item_count(), false);
  const double threshold = static_cast<double>(q_tilde) / 3.0;

  for (;;) {
    const double f_hat = static_cast<double>(sum_cur - base_total) /
                         static_cast<double>(batch);
    if (f_hat >= threshold) {
      trace.reached_threshold = true;
      return trace;
    }

    std::int64_t best = -1;
    std::size_t best_idx = 0;
    std::int64_t best_gain = 0;
    for (std::size_t idx = 0; idx < avail.size(); ++idx) {
      const std::size_t j = avail[idx];
      if (picked_flag[j]) continue;
      std::int64_t gain = 0;
      const auto& masks = sampled[idx];
      for (std::size_t s = 0; s < batch; ++s) {
        gain += static_cast<std::int64_t>(
                    or_count(&cur[s * words], masks[s], words)) -
                cur_count[s];
      }
      if (gain <= 0) continue;
      if (best < 0 || static_cast<__int128>(gain) * inst.item(best).cost >
                          static_cast<__int128>(best_gain) * inst.item(j).cost) {
        best = static_cast<std::int64_t>(j);
        best_idx = idx;
        best_gain = gain;
      }
    }
    if (best < 0) {
      // No estimated progress left on this batch. With the caller's
      // precondition intact this only happens once every available item
      // is picked or adds nothing empirically; the guarantee under
      // Monte-Carlo scoring is statistical, so stop rather than error.
      trace.reached_threshold = false;
      return trace;
    }

    picked_flag[best] = true;
    for (std::size_t s = 0; s < batch; ++s) {
      or_into(&cur[s * words], sampled[best_idx][s], words);
      const std::int64_t c =
          static_cast<std::int64_t>(word_popcount(&cur[s * words], words));
      sum_cur += c - cur_count[s];
      cur_count[s] = c;
    }
    trace.picked.push_back(static_cast<std::uint32_t>(best));
    trace.cost += inst.item(best).cost;
    trace.f_values.push_back(static_cast<double>(sum_cur - base_total) /
                             static_cast<double>(batch));
    trace.ratios.push_back(static_cast<double>(best_gain) /
                           static_cast<double>(batch) /
                           static_cast<double>(inst.item(best).cost));
  }
}

}  // namespace

GreedyTrace non_adapt_greedy(const Instance& inst, const CoverMask& base,
                             const ItemSet& avail, std::int64_t q_tilde,
                             const GreedyConfig& config, RngStream& rng) {
  if (q_tilde < 0) throw ContractError("non_adapt_greedy: negative q_tilde");
  GreedyTrace empty;
  empty.reached_threshold = true;
  if (q_tilde == 0) return empty;

  const auto avail_list = avail.to_indices();
  switch (config.eval) {
    case GreedyEval::exact:
      return run_exact(inst, base, avail_list, q_tilde, config);
    case GreedyEval::monte_carlo:
      return run_monte_carlo(inst, base, avail_list, q_tilde, config, rng);
    case GreedyEval::auto_select:
      try {
        return run_exact(inst, base, avail_list, q_tilde, config);
      } catch (const CapacityError&) {
        return run_monte_carlo(inst, base, avail_list, q_tilde, config, rng);
      }
  }
  throw ContractError("non_adapt_greedy: bad eval mode");
}

}  // namespace ssc
