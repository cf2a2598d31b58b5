#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sscover/edifice.hpp"
#include "sscover/gate.hpp"
#include "sscover/instance.hpp"
#include "sscover/policies.hpp"
#include "sscover/select_reduce.hpp"

namespace ssc {

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::size_t trials = 1000;
  std::uint64_t exact_budget = kDefaultExactBudget;
  std::size_t mc_samples = 2048;
  int threads = 1;
  AlgoConsts consts;
  bool keep_per_trial = false;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

// Statistics over integer trial costs. The integer accumulators make
// batch merging exact: combining two halves reproduces the full-batch
// numbers bit for bit.
struct PolicyStats {
  std::size_t trials = 0;
  std::int64_t cost_sum = 0;
  __int128 cost_sumsq = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ci95 = 0.0;  // 1.96 * stddev / sqrt(trials)
  std::vector<std::int64_t> per_trial;  // kept when requested

  static PolicyStats from_costs(const std::vector<std::int64_t>& costs,
                                bool keep = false);
  PolicyStats merged(const PolicyStats& other) const;
};

enum class PolicyKind {
  r_round,
  adaptive_greedy,
  canonical,
  nonadaptive,
  oracle_replay,
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::adaptive_greedy;
  int r = 1;                            // r_round only
  std::vector<std::uint32_t> ordering;  // nonadaptive only
  std::string name() const;
};

PolicySpec parse_policy(const std::string& name, int r);

// Runs cfg.trials independent trials. Per-trial randomness derives from
// (master seed, trial index), so the result is a pure function of
// (instance, spec, cfg) regardless of thread count: trials are merged in
// index order.
PolicyStats run_trials(const Instance& inst, const PolicySpec& spec,
                       const ExperimentConfig& cfg);

struct GapRow {
  int r = 0;
  PolicyStats stats;
  double oracle_cost = 0.0;
  double ratio_to_oracle = 0.0;
};

// r-round sweeps against the adaptive optimum. When the exact oracle is
// out of reach the canonical-path cost (k+1) is used for hard instances.
std::vector<GapRow> gap_experiment(const Instance& inst,
                                   const std::vector<int>& r_values,
                                   const ExperimentConfig& cfg);

// CSV schema: policy,r,trials,mean,std,ci95,seed
std::string stats_csv_header();
std::string stats_csv_row(const std::string& policy, int r,
                          const PolicyStats& stats, std::uint64_t seed);
// Gap table schema: r,trials,mean,std,ci95,ratio_to_oracle,seed
std::string gap_csv_header();
std::string gap_csv_row(const GapRow& row, std::uint64_t seed);

nlohmann::ordered_json stats_to_json(const std::string& policy, int r,
                                     const PolicyStats& stats,
                                     const ExperimentConfig& cfg);

}  // namespace ssc
