#include "sscover/harness.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "sscover/errors.hpp"

namespace ssc {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Fully materialized optimal decision map (reachable states only), so
// replay trials stay read-only and thread-safe.
struct OracleReplay {
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
  std::unordered_map<Key, std::uint32_t, KeyHash> decide;

  static OracleReplay build(const Instance& inst) {
    ExpectimaxOracle oracle(inst);
    oracle.expected_cost();
    OracleReplay replay;
    std::vector<Key> frontier;
    frontier.push_back(
        Key{ItemSet(inst.item_count()), CoverMask(inst.universe_size())});
    while (!frontier.empty()) {
      Key key = frontier.back();
      frontier.pop_back();
      if (static_cast<std::int64_t>(key.covered.count()) == inst.q()) continue;
      if (replay.decide.contains(key)) continue;
      const std::uint32_t pick = oracle.decision(key.chosen, key.covered);
      replay.decide.emplace(key, pick);
      for (const auto& entry : inst.item(pick).support) {
        Key next{key.chosen, key.covered | inst.pool()[entry.element].covers};
        next.chosen.set(pick);
        frontier.push_back(std::move(next));
      }
    }
    return replay;
  }

  std::int64_t trial(const Instance& inst, const Realization& real) const {
    ItemSet chosen(inst.item_count());
    CoverMask covered(inst.universe_size());
    std::int64_t cost = 0;
    while (static_cast<std::int64_t>(covered.count()) != inst.q()) {
      const auto it = decide.find(Key{chosen, covered});
      if (it == decide.end())
        throw InvariantError("oracle replay reached an unmapped state");
      chosen.set(it->second);
      covered |= inst.cover_of(
          it->second, static_cast<std::size_t>(real.outcomes[it->second]));
      cost += inst.item(it->second).cost;
    }
    return cost;
  }
};

}  // namespace

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["master_seed"] = cfg.master_seed;
  j["trials"] = cfg.trials;
  j["exact_budget"] = cfg.exact_budget;
  j["mc_samples"] = cfg.mc_samples;
  j["threads"] = cfg.threads;
  j["consts"] = to_json(cfg.consts);
  return j;
}

PolicyStats PolicyStats::from_costs(const std::vector<std::int64_t>& costs,
                                    bool keep) {
  PolicyStats s;
  s.trials = costs.size();
  for (std::int64_t c : costs) {
    s.cost_sum += c;
    s.cost_sumsq += static_cast<__int128>(c) * c;
  }
  if (keep) s.per_trial = costs;
  const double n = static_cast<double>(s.trials);
  if (s.trials > 0) s.mean = static_cast<double>(s.cost_sum) / n;
  if (s.trials > 1) {
    const double sumsq = static_cast<double>(s.cost_sumsq);
    const double sum = static_cast<double>(s.cost_sum);
    double var = (sumsq - sum * sum / n) / (n - 1.0);
    if (var < 0) var = 0;
    s.stddev = std::sqrt(var);
    s.ci95 = 1.96 * s.stddev / std::sqrt(n);
  }
  return s;
}

PolicyStats PolicyStats::merged(const PolicyStats& other) const {
  PolicyStats s;
  s.trials = trials + other.trials;
  s.cost_sum = cost_sum + other.cost_sum;
  s.cost_sumsq = cost_sumsq + other.cost_sumsq;
  s.per_trial = per_trial;
  s.per_trial.insert(s.per_trial.end(), other.per_trial.begin(),
                     other.per_trial.end());
  const double n = static_cast<double>(s.trials);
  if (s.trials > 0) s.mean = static_cast<double>(s.cost_sum) / n;
  if (s.trials > 1) {
    const double sumsq = static_cast<double>(s.cost_sumsq);
    const double sum = static_cast<double>(s.cost_sum);
    double var = (sumsq - sum * sum / n) / (n - 1.0);
    if (var < 0) var = 0;
    s.stddev = std::sqrt(var);
    s.ci95 = 1.96 * s.stddev / std::sqrt(n);
  }
  return s;
}

std::string PolicySpec::name() const {
  switch (kind) {
    case PolicyKind::r_round:
      return "r-round";
    case PolicyKind::adaptive_greedy:
      return "adaptive-greedy";
    case PolicyKind::canonical:
      return "canonical";
    case PolicyKind::nonadaptive:
      return "nonadaptive";
    case PolicyKind::oracle_replay:
      return "oracle";
  }
  return "?";
}

PolicySpec parse_policy(const std::string& name, int r) {
  PolicySpec spec;
  spec.r = r;
  if (name == "r-round") {
    spec.kind = PolicyKind::r_round;
  } else if (name == "adaptive-greedy") {
    spec.kind = PolicyKind::adaptive_greedy;
  } else if (name == "canonical") {
    spec.kind = PolicyKind::canonical;
  } else if (name == "nonadaptive") {
    spec.kind = PolicyKind::nonadaptive;
  } else if (name == "oracle") {
    spec.kind = PolicyKind::oracle_replay;
  } else {
    throw UsageError("unknown policy: " + name);
  }
  return spec;
}

PolicyStats run_trials(const Instance& inst, const PolicySpec& spec,
                       const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ContractError("run_trials: trials must be >= 1");

  // Policy-level precomputation shared read-only across trials.
  std::optional<HardInstance> hard;
  std::optional<OracleReplay> replay;
  std::vector<std::uint32_t> ordering = spec.ordering;
  switch (spec.kind) {
    case PolicyKind::canonical:
      hard = hard_instance_from(inst);
      break;
    case PolicyKind::oracle_replay:
      replay = OracleReplay::build(inst);
      break;
    case PolicyKind::nonadaptive:
      if (ordering.empty()) {
        ordering.resize(inst.item_count());
        for (std::size_t i = 0; i < ordering.size(); ++i)
          ordering[i] = static_cast<std::uint32_t>(i);
      }
      break;
    case PolicyKind::r_round:
      if (spec.r < 1 || static_cast<std::size_t>(spec.r) > inst.item_count())
        throw ContractError("run_trials: r outside [1, m]");
      break;
    default:
      break;
  }

  GreedyConfig greedy_cfg;
  greedy_cfg.eval = GreedyEval::auto_select;
  greedy_cfg.mc_samples = cfg.mc_samples;
  greedy_cfg.exact_budget = cfg.exact_budget;

  auto one_trial = [&](std::size_t t) -> std::int64_t {
    RngStream trial_stream =
        RngStream::from_path(cfg.master_seed, {rng_tag::kTrial, t});
    RngStream real_rng = trial_stream.child(rng_tag::kRealization);
    Realization real = sample_realization(inst, real_rng);

    switch (spec.kind) {
      case PolicyKind::r_round: {
        RngStream algo_rng = trial_stream.child(rng_tag::kAlgorithm);
        ObservationGate gate(inst, real);
        RunRecord rec = r_round_adaptive(inst, spec.r, algo_rng, gate,
                                         cfg.consts, greedy_cfg);
        if (rec.final_value != inst.q())
          throw InvariantError("r-round trial ended uncovered at trial " +
                               std::to_string(t));
        return rec.total_cost;
      }
      case PolicyKind::adaptive_greedy:
        return adaptive_greedy_trial(inst, real);
      case PolicyKind::canonical:
        return canonical_path_trial(*hard, real);
      case PolicyKind::nonadaptive:
        return exec_nonadaptive(inst, ordering, real);
      case PolicyKind::oracle_replay:
        return replay->trial(inst, real);
    }
    throw ContractError("run_trials: bad policy kind");
  };

  std::vector<std::int64_t> costs(cfg.trials, 0);
  const int threads = std::max(1, cfg.threads);
  if (threads == 1 || cfg.trials < 2) {
    for (std::size_t t = 0; t < cfg.trials; ++t) costs[t] = one_trial(t);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t t = static_cast<std::size_t>(w); t < cfg.trials;
               t += static_cast<std::size_t>(threads)) {
            costs[t] = one_trial(t);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  return PolicyStats::from_costs(costs, cfg.keep_per_trial);
}

std::vector<GapRow> gap_experiment(const Instance& inst,
                                   const std::vector<int>& r_values,
                                   const ExperimentConfig& cfg) {
  // Hard instances skip the exact oracle: the canonical-path policy costs
  // k+1 on every realization and upper-bounds the adaptive optimum.
  double oracle_cost = 0.0;
  if (inst.metadata().generator == "edifice-hard") {
    oracle_cost = static_cast<double>(hard_instance_from(inst).edifice.k + 1);
  } else {
    ExpectimaxOracle oracle(inst);
    oracle_cost = to_double(oracle.expected_cost());
  }

  std::vector<GapRow> rows;
  for (int r : r_values) {
    PolicySpec spec;
    spec.kind = PolicyKind::r_round;
    spec.r = r;
    GapRow row;
    row.r = r;
    row.stats = run_trials(inst, spec, cfg);
    row.oracle_cost = oracle_cost;
    row.ratio_to_oracle = oracle_cost > 0 ? row.stats.mean / oracle_cost : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string stats_csv_header() { return "policy,r,trials,mean,std,ci95,seed"; }

std::string stats_csv_row(const std::string& policy, int r,
                          const PolicyStats& stats, std::uint64_t seed) {
  return policy + "," + std::to_string(r) + "," + std::to_string(stats.trials) +
         "," + format_double(stats.mean) + "," + format_double(stats.stddev) +
         "," + format_double(stats.ci95) + "," + std::to_string(seed);
}

std::string gap_csv_header() {
  return "r,trials,mean,std,ci95,ratio_to_oracle,seed";
}

std::string gap_csv_row(const GapRow& row, std::uint64_t seed) {
  return std::to_string(row.r) + "," + std::to_string(row.stats.trials) + "," +
         format_double(row.stats.mean) + "," + format_double(row.stats.stddev) +
         "," + format_double(row.stats.ci95) + "," +
         format_double(row.ratio_to_oracle) + "," + std::to_string(seed);
}

nlohmann::ordered_json stats_to_json(const std::string& policy, int r,
                                     const PolicyStats& stats,
                                     const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["policy"] = policy;
  j["r"] = r;
  j["trials"] = stats.trials;
  j["mean"] = stats.mean;
  j["std"] = stats.stddev;
  j["ci95"] = stats.ci95;
  j["cost_sum"] = stats.cost_sum;
  j["config"] = to_json(cfg);
  if (!stats.per_trial.empty()) j["per_trial"] = stats.per_trial;
  return j;
}

}  // namespace ssc
