#include "sscover/select_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "sscover/errors.hpp"

namespace ssc {

namespace {

std::size_t ceil_log(double base, std::int64_t x) {
  if (x <= 1) return 0;
  if (base == 2.0) {
    // exact integer ceil(log2 x)
    const auto u = static_cast<std::uint64_t>(x);
    return static_cast<std::size_t>(64 - std::countl_zero(u - 1));
  }
  return static_cast<std::size_t>(
      std::ceil(std::log(static_cast<double>(x)) / std::log(base) - 1e-9));
}

constexpr std::uint64_t kIterTag = std::uint64_t(1) << 32;
constexpr std::uint64_t kGreedyTag = std::uint64_t(2) << 32;
constexpr std::uint64_t kPhaseTag = std::uint64_t(3) << 32;
constexpr std::uint64_t kRoundTag = std::uint64_t(4) << 32;

}  // namespace

std::size_t AlgoConsts::lambda(std::int64_t q) const {
  const double v = lambda_mult * static_cast<double>(ceil_log(log_base, q));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v - 1e-9)));
}

std::size_t AlgoConsts::gamma(std::int64_t m_times_c) const {
  const double v = gamma_mult * static_cast<double>(ceil_log(log_base, m_times_c));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v - 1e-9)));
}

std::size_t AlgoConsts::xi(double alpha) const {
  const double v = xi_mult * alpha;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v - 1e-9)));
}

std::uint64_t AlgoConsts::rejection_cap(std::int64_t m_times_c) const {
  const double mc = static_cast<double>(m_times_c);
  const double v = rejection_cap_factor * mc * mc;
  if (v >= 1e18) return std::uint64_t(1) << 60;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v));
}

nlohmann::ordered_json to_json(const AlgoConsts& c) {
  nlohmann::ordered_json j;
  j["lambda_mult"] = c.lambda_mult;
  j["gamma_mult"] = c.gamma_mult;
  j["xi_mult"] = c.xi_mult;
  j["alpha_mult"] = c.alpha_mult;
  j["log_base"] = c.log_base;
  j["rejection_cap_factor"] = c.rejection_cap_factor;
  return j;
}

void ConditionalSampler::index_items(const Instance& inst,
                                     const ItemSet& cond_items) {
  words_ = CoverMask(inst.universe_size()).word_count();
  static_words_.assign(words_, 0);
  if (event_base_.size() != 0)
    or_into(static_words_.data(), event_base_.data(), words_);
  for (std::size_t i : cond_items.to_indices()) {
    const auto& support = inst.item(i).support;
    if (support.size() == 1) {
      or_into(static_words_.data(), inst.cover_of(i, 0).data(), words_);
      continue;
    }
    DynItem dyn;
    dyn.item = i;
    dyn.outcomes.reserve(support.size());
    for (std::size_t o = 0; o < support.size(); ++o)
      dyn.outcomes.push_back(inst.cover_of(i, o).data());
    dyn_.push_back(std::move(dyn));
  }
  // Big sets first so failing draws abort sooner; stable so that ties
  // keep index order regardless of the library's sort.
  std::stable_sort(dyn_.begin(), dyn_.end(),
                   [this](const DynItem& a, const DynItem& b) {
                     return word_popcount(a.outcomes[0], words_) >
                            word_popcount(b.outcomes[0], words_);
                   });
}

ConditionalSampler::ConditionalSampler(
    const Instance& inst, ItemSet cond_items, ItemSet free_items,
    std::function<bool(const CoverMask&)> predicate, std::uint64_t max_trials)
    : inst_(&inst),
      cond_list_(cond_items.to_indices()),
      free_list_(free_items.to_indices()),
      base_(cond_items | free_items),
      predicate_(std::move(predicate)),
      event_base_(inst.universe_size()),
      max_trials_(max_trials) {
  if (cond_items.intersects(free_items))
    throw ContractError("sampler: conditioned and free item sets overlap");
}

ConditionalSampler::ConditionalSampler(const Instance& inst, ItemSet cond_items,
                                       ItemSet free_items, CoverMask event_base,
                                       std::size_t max_count,
                                       std::uint64_t max_trials)
    : inst_(&inst),
      cond_list_(cond_items.to_indices()),
      free_list_(free_items.to_indices()),
      base_(cond_items | free_items),
      event_base_(std::move(event_base)),
      max_count_(max_count),
      count_form_(true),
      max_trials_(max_trials) {
  if (cond_items.intersects(free_items))
    throw ContractError("sampler: conditioned and free item sets overlap");
  index_items(inst, cond_items);

  // Points covered under every realization already decide the event.
  std::vector<std::uint64_t> certain = static_words_;
  for (const auto& dyn : dyn_) {
    std::vector<std::uint64_t> inter(words_, ~std::uint64_t(0));
    for (const auto* mask : dyn.outcomes)
      for (std::size_t w = 0; w < words_; ++w) inter[w] &= mask[w];
    or_into(certain.data(), inter.data(), words_);
  }
  impossible_ = word_popcount(certain.data(), words_) > max_count_;
}

ConditionalSampler::Draw ConditionalSampler::sample(RngStream& rng) const {
  Draw draw;
  if (count_form_) {
    if (impossible_) {
      throw RejectionFailure("conditioning event has zero probability",
                             draw.trials);
    }
    std::vector<std::uint64_t> scratch(words_);
    for (;;) {
      if (draw.trials >= max_trials_) {
        throw RejectionFailure("rejection sampling exhausted " +
                                   std::to_string(max_trials_) + " trials",
                               draw.trials);
      }
      ++draw.trials;
      std::copy(static_words_.begin(), static_words_.end(), scratch.begin());
      bool failed = word_popcount(scratch.data(), words_) > max_count_;
      for (std::size_t d = 0; d < dyn_.size() && !failed; ++d) {
        const auto& dyn = dyn_[d];
        const auto o = inst_->sample_outcome(dyn.item, rng);
        or_into(scratch.data(), dyn.outcomes[o], words_);
        failed = word_popcount(scratch.data(), words_) > max_count_;
      }
      if (!failed) break;
    }
    draw.base_mask = CoverMask(inst_->universe_size());
    std::copy(scratch.begin(), scratch.end(), draw.base_mask.data());
  } else {
    CoverMask cond_mask(inst_->universe_size());
    for (;;) {
      if (draw.trials >= max_trials_) {
        throw RejectionFailure("rejection sampling exhausted " +
                                   std::to_string(max_trials_) + " trials",
                               draw.trials);
      }
      ++draw.trials;
      cond_mask.clear();
      for (std::size_t i : cond_list_)
        cond_mask |= inst_->cover_of(i, inst_->sample_outcome(i, rng));
      if (predicate_(cond_mask)) break;
    }
    draw.base_mask = cond_mask | event_base_;
  }
  for (std::size_t i : free_list_)
    draw.base_mask |= inst_->cover_of(i, inst_->sample_outcome(i, rng));
  return draw;
}

Realization conditional_sample(
    const Instance& inst, const ItemSet& base,
    const std::function<bool(const Realization&)>& predicate,
    std::uint64_t max_trials, RngStream& rng, std::uint64_t* trials_out) {
  const auto indices = base.to_indices();
  for (std::uint64_t t = 1; t <= max_trials; ++t) {
    Realization real(inst.item_count());
    for (std::size_t i : indices)
      real.outcomes[i] = static_cast<std::int32_t>(inst.sample_outcome(i, rng));
    if (predicate(real)) {
      if (trials_out) *trials_out = t;
      return real;
    }
  }
  throw RejectionFailure("rejection sampling exhausted " +
                             std::to_string(max_trials) + " trials",
                         max_trials);
}

SelectResult select(const Instance& inst, const CoverMask& t_prev,
                    std::int64_t q_g, const ItemSet& avail,
                    const ConditionalSampler& sampler, double alpha,
                    const AlgoConsts& consts, const GreedyConfig& greedy_cfg,
                    RngStream& rng) {
  if (alpha < 1.0) throw ContractError("select: alpha must be >= 1");
  if (avail.intersects(sampler.base()))
    throw ContractError("select: avail overlaps the conditioning set");

  SelectResult result;
  result.chosen = ItemSet(inst.item_count());
  const std::size_t xi = consts.xi(alpha);
  const std::int64_t t_prev_count = static_cast<std::int64_t>(t_prev.count());

  // T_i is a deterministic function of the sampled realization's covered
  // mask, so equal masks reuse the same greedy output.
  std::unordered_map<CoverMask, std::vector<std::uint32_t>, CoverMask::Hash> memo;

  for (std::size_t i = 1; i <= xi; ++i) {
    RngStream iter_rng = rng.child(kIterTag + i);
    const auto draw = sampler.sample(iter_rng);
    const CoverMask realized = t_prev | draw.base_mask;
    const std::int64_t g_value =
        static_cast<std::int64_t>(realized.count()) - t_prev_count;
    const std::int64_t deficit = q_g - g_value;
    if (deficit < 0)
      throw ContractError("select: realized value exceeds q_g");
    ++result.iterations;
    if (deficit == 0) {
      ++result.zero_deficit_samples;
      continue;
    }

    auto it = memo.find(realized);
    if (it == memo.end()) {
      RngStream greedy_rng = rng.child(kGreedyTag + memo.size());
      GreedyTrace trace = non_adapt_greedy(inst, realized, avail, deficit,
                                           greedy_cfg, greedy_rng);
      it = memo.emplace(realized, std::move(trace.picked)).first;
      ++result.greedy_calls;
    }
    for (std::uint32_t j : it->second) {
      if (!result.chosen.test(j)) {
        result.chosen.set(j);
        result.order.push_back(j);
        result.cost += inst.item(j).cost;
      }
    }
  }
  return result;
}

// E_k(S) compares an integer deficit against Q_k/Q^{1/r}; the comparison
// is equivalent to deficit >= ceil(bar), computed once.
std::int64_t deficit_event_bar(std::int64_t q, std::int64_t q_k,
                               int total_rounds) {
  const double bar =
      static_cast<double>(q_k) /
      std::pow(static_cast<double>(q), 1.0 / static_cast<double>(total_rounds));
  return static_cast<std::int64_t>(std::ceil(bar - 1e-9));
}

bool deficit_event(const Instance& inst, const CoverMask& t_prev,
                   std::int64_t q_k, int total_rounds,
                   const CoverMask& s_mask) {
  const std::int64_t g_value =
      static_cast<std::int64_t>(t_prev.count_or(s_mask)) -
      static_cast<std::int64_t>(t_prev.count());
  return q_k - g_value >= deficit_event_bar(inst.q(), q_k, total_rounds);
}

ReduceResult reduce(const Instance& inst, const ItemSet& avail,
                    const DeficitState& state, const AlgoConsts& consts,
                    const GreedyConfig& greedy_cfg, RngStream& rng) {
  if (state.q_k <= 0) throw ContractError("reduce: requires positive deficit");
  if (avail.none()) throw ContractError("reduce: no available items");

  const std::int64_t q = inst.q();
  const std::int64_t mc =
      static_cast<std::int64_t>(inst.item_count()) * inst.max_cost();
  const std::size_t lambda = consts.lambda(q);
  const std::size_t gamma = consts.gamma(mc);
  const double alpha =
      consts.alpha_mult *
      std::pow(static_cast<double>(q), 1.0 / static_cast<double>(state.total_rounds));
  const std::uint64_t cap = consts.rejection_cap(mc);
  const std::int64_t bar = deficit_event_bar(q, state.q_k, state.total_rounds);
  // E_k(S) holds iff |t_prev ∪ S draw| stays at or below this count.
  const std::size_t event_max_count = static_cast<std::size_t>(
      std::max<std::int64_t>(0, static_cast<std::int64_t>(state.t_prev.count()) +
                                    state.q_k - bar));

  ReduceResult result;
  ItemSet s_set(inst.item_count());

  for (std::size_t p = 1; p <= gamma; ++p) {
    RngStream phase_rng = rng.child(kPhaseTag + p);
    const ItemSet cond_set = s_set;  // S_{p-1}, fixed through the phase
    ItemSet r_set(inst.item_count());
    std::vector<std::uint32_t> r_order;

    bool rejected = false;
    for (std::size_t i = 1; i <= lambda; ++i) {
      ConditionalSampler sampler(inst, cond_set, r_set, state.t_prev,
                                 event_max_count, cap);
      if (sampler.event_impossible()) {
        rejected = true;
        result.note = "phase " + std::to_string(p) +
                      ": conditioning event has zero probability";
        break;
      }
      const ItemSet sel_avail = avail.minus(s_set | r_set);
      if (sel_avail.none()) continue;  // every sample has zero deficit
      RngStream iter_rng = phase_rng.child(kIterTag + i);
      try {
        SelectResult sel = select(inst, state.t_prev, state.q_k, sel_avail,
                                  sampler, alpha, consts, greedy_cfg, iter_rng);
        for (std::uint32_t j : sel.order) {
          r_set.set(j);
          r_order.push_back(j);
        }
      } catch (const RejectionFailure& rf) {
        rejected = true;
        result.note = "phase " + std::to_string(p) +
                      ": conditioning event not hit in " +
                      std::to_string(rf.trials()) + " trials";
        break;
      }
    }

    for (std::uint32_t j : r_order) result.ordering.push_back(j);
    s_set |= r_set;
    result.phase_boundaries.push_back(result.ordering.size());
    result.phases_run = p;
    if (rejected) {
      result.early_stop = true;
      break;
    }
  }
  return result;
}

std::int64_t round_threshold(std::int64_t q, int k, int r) {
  if (k >= r) return q;
  const double exponent =
      static_cast<double>(r - k) / static_cast<double>(r);
  const double raw =
      static_cast<double>(q) - std::pow(static_cast<double>(q), exponent);
  const auto tau = static_cast<std::int64_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::int64_t>(tau, 0, q);
}

nlohmann::ordered_json to_json(const RunRecord& rec) {
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const auto& round : rec.rounds) {
    nlohmann::ordered_json jr;
    jr["tau"] = round.plan.tau;
    jr["ordering"] = round.plan.ordering;
    jr["consumed_prefix_len"] = round.consumed;
    jr["cost"] = round.cost;
    jr["value_after"] = round.value_after;
    jr["reduce_prefix"] = round.plan.reduce_prefix;
    rounds.push_back(std::move(jr));
  }
  nlohmann::ordered_json j;
  j["rounds"] = std::move(rounds);
  j["total_cost"] = rec.total_cost;
  j["final_value"] = rec.final_value;
  return j;
}

RunRecord r_round_adaptive(const Instance& inst, int r, RngStream& algo_rng,
                           ObservationGate& gate, const AlgoConsts& consts,
                           const GreedyConfig& greedy_cfg) {
  if (r < 1 || static_cast<std::size_t>(r) > inst.item_count())
    throw ContractError("r_round_adaptive: r must be in [1, m]");
  if (gate.rounds_committed() != 0 || !gate.revealed().empty())
    throw ContractError("r_round_adaptive: gate must be fresh for this run");

  RunRecord rec;
  for (int k = 1; k <= r; ++k) {
    const CoverMask t_prev = gate.revealed_mask();
    const std::int64_t q_k = inst.q() - gate.revealed_value();
    const ItemSet remaining = inst.all_items().minus(gate.consumed_items());

    RoundPlan plan;
    plan.tau = round_threshold(inst.q(), k, r);

    if (q_k > 0 && remaining.any()) {
      RngStream round_rng = algo_rng.child(kRoundTag + static_cast<std::uint64_t>(k));
      DeficitState state{t_prev, q_k, k, r};
      ReduceResult red =
          reduce(inst, remaining, state, consts, greedy_cfg, round_rng);
      plan.ordering = std::move(red.ordering);
      plan.phase_boundaries = std::move(red.phase_boundaries);
      plan.reduce_prefix = plan.ordering.size();
    }

    // Remaining items appended in ascending index order.
    ItemSet placed(inst.item_count());
    for (std::uint32_t j : plan.ordering) placed.set(j);
    for (std::size_t j : remaining.to_indices())
      if (!placed.test(j)) plan.ordering.push_back(static_cast<std::uint32_t>(j));

    auto outcome = gate.run_committed_round(plan.ordering, plan.tau);
    RoundRecord record;
    record.plan = std::move(plan);
    record.consumed = outcome.consumed;
    record.cost = outcome.cost;
    record.value_after = outcome.value_after;
    rec.total_cost += outcome.cost;
    rec.rounds.push_back(std::move(record));
  }
  rec.final_value = gate.revealed_value();
  return rec;
}

}  // namespace ssc
