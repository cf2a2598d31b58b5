// Batch front door: generate, verify, run, and report.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sscover/edifice.hpp"
#include "sscover/harness.hpp"
#include "sscover/lp.hpp"

namespace {

using namespace ssc;

struct CommonOpts {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  int threads = 1;
  std::size_t mc_samples = 2048;
  std::uint64_t exact_budget = kDefaultExactBudget;
  bool keep_per_trial = false;
  AlgoConsts consts;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--trials", opts.trials, "number of simulation trials");
  cmd->add_option("--threads", opts.threads, "trial parallelism cap");
  cmd->add_option("--mc-samples", opts.mc_samples,
                  "Monte-Carlo samples per greedy evaluation");
  cmd->add_option("--exact-budget", opts.exact_budget,
                  "product-distribution budget for exact evaluation");
  cmd->add_flag("--keep-per-trial", opts.keep_per_trial,
                "retain per-trial costs in the JSON output");
  cmd->add_option("--const.lambda-mult", opts.consts.lambda_mult,
                  "multiplier in Lambda = mult * ceil(log Q)");
  cmd->add_option("--const.gamma-mult", opts.consts.gamma_mult,
                  "multiplier in Gamma = mult * ceil(log mC)");
  cmd->add_option("--const.xi-mult", opts.consts.xi_mult,
                  "multiplier in Xi = ceil(mult * alpha)");
  cmd->add_option("--const.alpha-mult", opts.consts.alpha_mult,
                  "multiplier in alpha = mult * Q^(1/r)");
  cmd->add_option("--const.log-base", opts.consts.log_base,
                  "base of the logs in Lambda and Gamma");
  cmd->add_option("--const.rejection-cap-factor",
                  opts.consts.rejection_cap_factor,
                  "rejection cap = factor * (mC)^2 per draw");
}

ExperimentConfig to_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  cfg.master_seed = opts.seed;
  cfg.trials = opts.trials;
  cfg.threads = opts.threads;
  cfg.mc_samples = opts.mc_samples;
  cfg.exact_budget = opts.exact_budget;
  cfg.keep_per_trial = opts.keep_per_trial;
  cfg.consts = opts.consts;
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvariantError("cannot open for writing: " + path);
  out << text;
}

nlohmann::ordered_json resolved_config(const std::string& command,
                                       const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = to_json(cfg);
  return j;
}

int cmd_gen(const std::string& kind, std::uint32_t n, std::uint32_t m,
            std::uint32_t max_support, double density, std::int64_t max_cost,
            std::uint32_t p, std::uint32_t k, std::uint64_t seed,
            const std::string& out_path) {
  Instance inst = [&]() {
    if (kind == "singleton-gap") return gen_singleton_gap(n);
    if (kind == "random-setcover") {
      RandomSetCoverParams params;
      params.n = n;
      params.m = m;
      params.max_support = max_support;
      params.density = density;
      params.max_cost = max_cost;
      params.seed = seed;
      return gen_random_setcover(params);
    }
    if (kind == "edifice-hard")
      return build_hard_instance(build_edifice(p, k)).instance;
    throw UsageError("unknown generator kind: " + kind);
  }();

  if (!out_path.empty()) save_instance(inst, out_path);
  std::cout << "Q=" << inst.q() << " m=" << inst.item_count()
            << " C=" << inst.max_cost() << "\n";
  if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& path, std::size_t trials,
               std::uint64_t seed) {
  Instance inst = load_instance(path);
  bool ok = true;

  RngStream rng = RngStream::from_path(seed, {rng_tag::kTrial});
  auto feasibility = check_always_feasible(inst, kDefaultExactBudget, trials, rng);
  std::cout << "feasibility (" << (feasibility.exhaustive ? "exhaustive" : "sampled")
            << ", " << feasibility.checked << " realizations): "
            << (feasibility.feasible ? "pass" : "FAIL") << "\n";
  ok = ok && feasibility.feasible;

  if (inst.pool().size() <= TableFn::kMaxGround) {
    auto structure = check_monotone_submodular(inst.coverage());
    std::cout << "coverage function monotone submodular: "
              << (structure.ok() ? "pass" : "FAIL") << "\n";
    ok = ok && structure.ok();
  } else {
    std::cout << "coverage function check skipped (ground set > 20)\n";
  }

  if (inst.metadata().generator == "edifice-hard") {
    HardInstance hard = hard_instance_from(inst);
    const auto& ed = hard.edifice;
    EdificeReport report = verify_edifice(ed, ed.s, ed.b, ed.k, ed.d);
    std::cout << "edifice (s=" << ed.s << ", b=" << ed.b << ", k=" << ed.k
              << ", d=" << ed.d << "): " << (report.ok ? "pass" : "FAIL")
              << "\n";
    for (const auto& v : report.violations)
      std::cout << "  property " << v.property << ": " << v.detail << "\n";
    ok = ok && report.ok;
  }

  std::cout << (ok ? "OK" : "INVALID") << "\n";
  return ok ? 0 : 2;
}

int cmd_run(const std::string& instance_path, const std::string& policy,
            int r, const CommonOpts& opts, const std::string& csv_path,
            const std::string& json_path) {
  Instance inst = load_instance(instance_path);
  ExperimentConfig cfg = to_config(opts);

  PolicySpec spec;
  if (policy == "nonadaptive-bruteforce") {
    BruteForceResult best = best_nonadaptive_bruteforce(inst);
    std::cout << "best ordering:";
    for (auto j : best.ordering) std::cout << ' ' << j;
    std::cout << "\nexact expected cost: " << to_string(best.expected_cost)
              << " (" << to_double(best.expected_cost) << ")\n";
    spec.kind = PolicyKind::nonadaptive;
    spec.ordering = best.ordering;
  } else {
    spec = parse_policy(policy, r);
  }

  if (spec.kind == PolicyKind::oracle_replay) {
    ExpectimaxOracle oracle(inst);
    std::cout << "exact expected cost: " << to_string(oracle.expected_cost())
              << " (" << to_double(oracle.expected_cost()) << ")\n";
  }

  PolicyStats stats = run_trials(inst, spec, cfg);
  const int row_r = spec.kind == PolicyKind::r_round ? r : 0;
  std::cout << resolved_config("run", cfg).dump() << "\n";
  std::cout << stats_csv_header() << "\n"
            << stats_csv_row(spec.name(), row_r, stats, cfg.master_seed) << "\n";

  if (!csv_path.empty()) {
    write_file(csv_path, stats_csv_header() + "\n" +
                             stats_csv_row(spec.name(), row_r, stats,
                                           cfg.master_seed) +
                             "\n");
  }
  if (!json_path.empty()) {
    auto j = resolved_config("run", cfg);
    j["result"] = stats_to_json(spec.name(), row_r, stats, cfg);
    write_file(json_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_gap(const std::string& instance_path, const std::string& r_list,
            const CommonOpts& opts, const std::string& csv_path,
            const std::string& json_path) {
  Instance inst = load_instance(instance_path);
  ExperimentConfig cfg = to_config(opts);

  std::vector<int> rs;
  std::size_t pos = 0;
  while (pos < r_list.size()) {
    std::size_t next = r_list.find(',', pos);
    if (next == std::string::npos) next = r_list.size();
    rs.push_back(std::stoi(r_list.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (rs.empty()) throw UsageError("--r-list is empty");

  auto rows = gap_experiment(inst, rs, cfg);
  std::cout << resolved_config("gap", cfg).dump() << "\n";
  std::string csv = gap_csv_header() + "\n";
  for (const auto& row : rows) csv += gap_csv_row(row, cfg.master_seed) + "\n";
  std::cout << csv;

  if (!csv_path.empty()) write_file(csv_path, csv);
  if (!json_path.empty()) {
    auto j = resolved_config("gap", cfg);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      auto jr = stats_to_json("r-round", row.r, row.stats, cfg);
      jr["ratio_to_oracle"] = row.ratio_to_oracle;
      jr["oracle_cost"] = row.oracle_cost;
      arr.push_back(std::move(jr));
    }
    j["rows"] = std::move(arr);
    write_file(json_path, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_lp(const std::string& instance_path, const std::string& dump_path,
           bool check_w) {
  Instance inst = load_instance(instance_path);
  WolseyLP lp = build_lp(inst);
  LpSolution sol = solve_lp(lp);
  std::cout << "P = " << to_string(sol.objective) << " ("
            << to_double(sol.objective) << ")\n";
  std::cout << "y* =";
  for (const auto& v : sol.y) std::cout << ' ' << to_string(v);
  std::cout << "\n";

  if (!dump_path.empty()) {
    std::ofstream out(dump_path, std::ios::binary);
    if (!out) throw InvariantError("cannot open for writing: " + dump_path);
    dump_lp(lp, out);
    std::cout << "wrote " << dump_path << "\n";
  }

  if (check_w) {
    ExpectimaxOracle oracle(inst);
    std::vector<Rational> w = opt_policy_to_w(oracle);
    auto feasible = check_feasible(lp, w);
    Rational w_dot_c(0);
    for (std::size_t i = 0; i < lp.m; ++i) w_dot_c += w[i] * lp.costs[i];
    std::cout << "w feasible: " << (feasible.feasible ? "pass" : "FAIL")
              << "\nE[cost(OPT)] = " << to_string(w_dot_c)
              << "\nP <= E[cost(OPT)]: "
              << (sol.objective <= w_dot_c ? "pass" : "FAIL") << "\n";
    if (!feasible.feasible || sol.objective > w_dot_c) return 2;
  }
  return 0;
}

int cmd_oracle(const std::string& instance_path, bool print_w) {
  Instance inst = load_instance(instance_path);
  ExpectimaxOracle oracle(inst);
  const Rational& cost = oracle.expected_cost();
  std::cout << "expected cost: " << to_string(cost) << " (" << to_double(cost)
            << ")\n"
            << "states: " << oracle.state_count() << "\n";
  if (print_w) {
    std::vector<Rational> w = oracle.usage_vector();
    std::cout << "w =";
    for (const auto& v : w) std::cout << ' ' << to_string(v);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic submodular cover workbench"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance file");
  std::string gen_kind, gen_out;
  std::uint32_t gen_n = 6, gen_m = 5, gen_support = 3, gen_p = 3, gen_k = 2;
  double gen_density = 0.5;
  std::int64_t gen_cost = 1;
  std::uint64_t gen_seed = 1;
  gen->add_option("kind", gen_kind,
                  "singleton-gap | random-setcover | edifice-hard")
      ->required();
  gen->add_option("--n", gen_n, "universe size");
  gen->add_option("--m", gen_m, "item count (random-setcover)");
  gen->add_option("--max-support", gen_support, "max outcomes per item");
  gen->add_option("--density", gen_density, "per-point cover probability");
  gen->add_option("--max-cost", gen_cost, "max item cost");
  gen->add_option("--p", gen_p, "edifice prime");
  gen->add_option("--k", gen_k, "edifice levels");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output instance path");

  // verify
  auto* verify = app.add_subcommand("verify", "check instance invariants");
  std::string verify_path;
  std::size_t verify_trials = 10000;
  std::uint64_t verify_seed = 1;
  verify->add_option("path", verify_path, "instance file")->required();
  verify->add_option("--trials", verify_trials, "feasibility sample trials");
  verify->add_option("--seed", verify_seed, "sampling seed");

  // run
  auto* run = app.add_subcommand("run", "simulate a policy");
  std::string run_instance, run_policy, run_csv, run_json;
  int run_r = 1;
  CommonOpts run_opts;
  run->add_option("--instance", run_instance, "instance file")->required();
  run->add_option("--policy", run_policy,
                  "r-round | adaptive-greedy | nonadaptive-bruteforce | "
                  "oracle | canonical")
      ->required();
  run->add_option("--r", run_r, "rounds for the r-round policy");
  run->add_option("--csv", run_csv, "write stats CSV here");
  run->add_option("--json", run_json, "write full records here");
  add_common(run, run_opts);

  // gap
  auto* gap = app.add_subcommand("gap", "adaptivity-gap experiment");
  std::string gap_instance, gap_rs = "1,2,3", gap_csv, gap_json;
  CommonOpts gap_opts;
  gap->add_option("--instance", gap_instance, "instance file")->required();
  gap->add_option("--r-list", gap_rs, "comma-separated r values");
  gap->add_option("--csv", gap_csv, "write gap CSV here");
  gap->add_option("--json", gap_json, "write full records here");
  add_common(gap, gap_opts);

  // lp
  auto* lp = app.add_subcommand("lp", "build and solve the lower-bound LP");
  std::string lp_instance, lp_dump;
  bool lp_check_w = false;
  lp->add_option("--instance", lp_instance, "instance file")->required();
  lp->add_option("--dump", lp_dump, "write the row dump here");
  lp->add_flag("--check-w", lp_check_w,
               "verify the optimal policy's usage vector");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimal adaptive cost");
  std::string oracle_instance;
  bool oracle_w = false;
  oracle->add_option("--instance", oracle_instance, "instance file")->required();
  oracle->add_flag("--w", oracle_w, "also print the usage vector");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_n, gen_m, gen_support, gen_density,
                     gen_cost, gen_p, gen_k, gen_seed, gen_out);
    if (verify->parsed()) return cmd_verify(verify_path, verify_trials, verify_seed);
    if (run->parsed())
      return cmd_run(run_instance, run_policy, run_r, run_opts, run_csv,
                     run_json);
    if (gap->parsed())
      return cmd_gap(gap_instance, gap_rs, gap_opts, gap_csv, gap_json);
    if (lp->parsed()) return cmd_lp(lp_instance, lp_dump, lp_check_w);
    if (oracle->parsed()) return cmd_oracle(oracle_instance, oracle_w);
  } catch (const ssc::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ssc::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const ssc::RejectionFailure& e) {
    std::cerr << "sampling error: " << e.what() << "\n";
    return 2;
  } catch (const ssc::InvariantError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
