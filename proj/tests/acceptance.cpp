// Acceptance suite: one pass/fail line per criterion, machine-readable
// CSV artifacts on disk, nonzero exit when anything fails.
//
// Criteria run at pinned defaults. SSC_ACCEPT_SCALE < 1 shrinks trial
// counts for development runs and is loudly reported as NOT an
// acceptance run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "sscover/edifice.hpp"
#include "sscover/greedy.hpp"
#include "sscover/harness.hpp"
#include "sscover/lp.hpp"

using namespace ssc;

namespace {

constexpr std::uint64_t kMasterSeed = 20250808;

struct Criterion {
  int id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

using CsvBundle = std::map<std::string, std::string>;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

double g_scale = 1.0;
int g_threads = 2;

std::size_t scaled(std::size_t trials) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(
                                      static_cast<double>(trials) * g_scale));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ExperimentConfig base_config(std::size_t trials) {
  ExperimentConfig cfg;
  cfg.master_seed = kMasterSeed;
  cfg.trials = scaled(trials);
  cfg.threads = g_threads;
  return cfg;
}

// ---------------------------------------------------------------- corpus

Instance corpus_instance(std::uint64_t seed) {
  RandomSetCoverParams params;
  params.n = 5;
  params.m = 5;  // completion item brings m to 6
  params.max_support = 3;
  params.density = 0.45;
  params.max_cost = 3;
  params.seed = seed;
  return gen_random_setcover(params);
}

std::vector<Instance> feasibility_corpus() {
  std::vector<Instance> corpus;
  for (std::uint32_t n : {3u, 4u, 5u, 6u}) corpus.push_back(gen_singleton_gap(n));
  for (std::uint64_t seed = 101; seed <= 116; ++seed) {
    RandomSetCoverParams params;
    params.n = 6;
    params.m = 4;
    params.max_support = 3;
    params.density = 0.45;
    params.max_cost = 2;
    params.seed = seed;
    corpus.push_back(gen_random_setcover(params));
  }
  return corpus;
}

// --------------------------------------------------------- criterion 1

Criterion criterion1() {
  Timer timer;
  Criterion c{1, "structural suite: marginal bound and marginal closure, exhaustive"};

  RngStream rng = RngStream::from_path(kMasterSeed, {1});
  const std::size_t instances = scaled(1000);
  std::size_t violations = 0;

  for (std::size_t t = 0; t < instances; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(7));  // <= 8
    const std::size_t ground = 1 + rng.below(6);                           // <= 6
    std::vector<GroundElement> elems;
    for (std::size_t i = 0; i < ground; ++i) {
      CoverMask m(n);
      for (std::uint32_t p = 0; p < n; ++p)
        if (rng.next_double() < 0.5) m.set(p);
      elems.push_back({m, "g" + std::to_string(i)});
    }
    CoverageFn f(n, std::move(elems));

    // value table over all subsets
    const std::size_t total = std::size_t(1) << ground;
    std::vector<std::int64_t> val(total);
    for (std::uint32_t key = 0; key < total; ++key) {
      Bitset s(ground);
      for (std::size_t i = 0; i < ground; ++i)
        if (key & (1u << i)) s.set(i);
      val[key] = f.eval(s);
    }

    // f(S) <= f(T) + sum of marginals over S \ T, for every pair (S, T)
    for (std::uint32_t s = 0; s < total && violations == 0; ++s) {
      for (std::uint32_t t2 = 0; t2 < total; ++t2) {
        std::int64_t rhs = val[t2];
        std::uint32_t extra = s & ~t2;
        while (extra) {
          const std::uint32_t e = extra & (~extra + 1);
          rhs += val[t2 | e] - val[t2];
          extra &= extra - 1;
        }
        if (val[s] > rhs) {
          ++violations;
          break;
        }
      }
    }

    // every materialized marginal stays monotone submodular
    for (std::uint32_t base = 0; base < total && violations == 0; ++base) {
      auto report = check_monotone_submodular(
          ground, std::function<std::int64_t(const Bitset&)>(
                      [&](const Bitset& sub) {
                        std::uint32_t key = base;
                        for (std::size_t i = 0; i < ground; ++i)
                          if (sub.test(i)) key |= 1u << i;
                        return val[key] - val[base];
                      }));
      if (!report.monotone || !report.submodular) ++violations;
    }
  }

  c.seconds = timer.seconds();
  c.pass = violations == 0 && c.seconds < 10.0;
  c.detail = std::to_string(instances) + " instances, " +
             std::to_string(violations) + " violations, " +
             format_double(c.seconds) + "s (budget 10s)";
  return c;
}

// ----------------------------------------------------- criteria 2 and 3

void criteria2and3(std::vector<Criterion>& out) {
  Timer timer;
  Criterion c2{2, "greedy coverage and cost guarantee on the exact corpus"};
  Criterion c3{3, "LP lower bound on the exact corpus"};

  const std::size_t count = scaled(200);
  std::size_t greedy_violations = 0;
  std::size_t lp_violations = 0;

  GreedyConfig greedy_cfg;
  greedy_cfg.eval = GreedyEval::exact;
  RngStream rng = RngStream::from_path(kMasterSeed, {2});

  for (std::size_t i = 0; i < count; ++i) {
    Instance inst = corpus_instance(1000 + i);

    auto trace = non_adapt_greedy(inst, CoverMask(inst.universe_size()),
                                  inst.all_items(), inst.q(), greedy_cfg, rng);
    WolseyLP lp = build_lp(inst);
    LpSolution sol = solve_lp(lp);
    ExpectimaxOracle oracle(inst);
    const Rational opt = oracle.expected_cost();

    const bool coverage_ok =
        !trace.f_exact.empty() && 3 * trace.f_exact.back() >= inst.q();
    const bool lp_bound_ok = Rational(trace.cost) <= 3 * sol.objective;
    const bool opt_bound_ok = Rational(trace.cost) <= 3 * opt;
    if (!(coverage_ok && lp_bound_ok && opt_bound_ok)) ++greedy_violations;

    std::vector<Rational> w = opt_policy_to_w(oracle);
    Rational w_dot_c(0);
    for (std::size_t j = 0; j < lp.m; ++j) w_dot_c += w[j] * lp.costs[j];
    const bool w_ok = check_feasible(lp, w).feasible;
    const bool p_ok = sol.objective <= w_dot_c && w_dot_c == opt;
    if (!(w_ok && p_ok)) ++lp_violations;
  }

  const double elapsed = timer.seconds();
  c2.seconds = elapsed;
  c2.pass = greedy_violations == 0 && elapsed < 120.0;
  c2.detail = std::to_string(count) + " instances, " +
              std::to_string(greedy_violations) + " violations, " +
              format_double(elapsed) + "s (budget 120s)";
  c3.seconds = elapsed;
  c3.pass = lp_violations == 0;
  c3.detail = std::to_string(count) + " instances, " +
              std::to_string(lp_violations) + " violations";
  out.push_back(c2);
  out.push_back(c3);
}

// --------------------------------------------------------- criterion 4

Criterion criterion4(CsvBundle& bundle) {
  Timer timer;
  Criterion c{4, "select deficit contraction on singleton-gap(6)"};

  Instance inst = gen_singleton_gap(6);
  ItemSet base(inst.item_count());
  base.set(0);
  const ItemSet avail = inst.all_items().minus(base);
  const double alpha = 6.0;
  AlgoConsts consts;
  GreedyConfig greedy_cfg;
  greedy_cfg.eval = GreedyEval::exact;

  const std::size_t runs = scaled(10000);
  RngStream outer = RngStream::from_path(kMasterSeed, {4});
  std::vector<std::int64_t> deficits;
  deficits.reserve(runs);

  for (std::size_t t = 0; t < runs; ++t) {
    RngStream run_rng = outer.child(t);
    ConditionalSampler sampler(inst, ItemSet(inst.item_count()), base,
                               [](const CoverMask&) { return true; }, 1 << 20);
    SelectResult res = select(inst, CoverMask(inst.universe_size()), inst.q(),
                              avail, sampler, alpha, consts, greedy_cfg,
                              run_rng);
    RngStream measure = run_rng.child(999);
    Realization real = sample_realization(inst, measure);
    const auto covered = covered_mask(inst, real, res.chosen | base);
    deficits.push_back(inst.q() -
                       static_cast<std::int64_t>(covered.count()));
  }

  PolicyStats stats = PolicyStats::from_costs(deficits);
  const double se = stats.trials > 1
                        ? stats.stddev / std::sqrt(static_cast<double>(stats.trials))
                        : 0.0;
  const double bound = 5.0 / 6.0 + 3.0 * se;  // delta = 1

  c.seconds = timer.seconds();
  c.pass = stats.mean <= bound && c.seconds < 60.0;
  c.detail = "mean post-deficit " + format_double(stats.mean) + " <= " +
             format_double(bound) + " over " + std::to_string(runs) +
             " runs, " + format_double(c.seconds) + "s (budget 60s)";

  bundle["select_contraction.csv"] =
      stats_csv_header() + "\n" +
      stats_csv_row("select-post-deficit", 0, stats, kMasterSeed) + "\n";
  return c;
}

// --------------------------------------------------------- criterion 5

Criterion criterion5(CsvBundle& bundle) {
  Timer timer;
  Criterion c{5, "reduce failure-event tail bound"};

  struct Case {
    std::string name;
    Instance inst;
  };
  std::vector<Case> cases;
  cases.push_back({"singleton-gap-6", gen_singleton_gap(6)});
  cases.push_back(
      {"edifice-hard-p3-k2", build_hard_instance(build_edifice(3, 2)).instance});

  const std::size_t trials = scaled(10000);
  const int r = 1;  // tightest event threshold
  AlgoConsts consts;
  GreedyConfig greedy_cfg;

  bool all_ok = true;
  std::string csv = "instance,phase,events,denominator,ratio\n";
  std::ostringstream detail;

  for (const auto& [name, inst] : cases) {
    RngStream outer = RngStream::from_path(kMasterSeed, {5});
    std::size_t max_phases = 0;
    std::vector<std::size_t> event_count;  // index p: events at S_p
    std::vector<std::size_t> ran_count;    // trials that ran phase p
    std::size_t final_events = 0;

    for (std::size_t t = 0; t < trials; ++t) {
      RngStream trial = outer.child(t);
      RngStream algo = trial.child(1);
      DeficitState state{CoverMask(inst.universe_size()), inst.q(), 1, r};
      ReduceResult red =
          reduce(inst, inst.all_items(), state, consts, greedy_cfg, algo);

      RngStream real_rng = trial.child(2);
      Realization real = sample_realization(inst, real_rng);

      max_phases = std::max(max_phases, red.phase_boundaries.size());
      event_count.resize(max_phases, 0);
      ran_count.resize(max_phases, 0);

      CoverMask mask(inst.universe_size());
      std::size_t consumed = 0;
      bool final_event = false;
      for (std::size_t p = 0; p < red.phase_boundaries.size(); ++p) {
        for (; consumed < red.phase_boundaries[p]; ++consumed) {
          const auto j = red.ordering[consumed];
          mask |= inst.cover_of(j, static_cast<std::size_t>(real.outcomes[j]));
        }
        const bool event = deficit_event(inst, state.t_prev, state.q_k, r, mask);
        ++ran_count[p];
        if (event) ++event_count[p];
        final_event = event;
      }
      if (final_event) ++final_events;
    }

    const double tail =
        static_cast<double>(final_events) / static_cast<double>(trials);
    bool case_ok = tail <= 0.01;
    csv += name + ",final," + std::to_string(final_events) + "," +
           std::to_string(trials) + "," + format_double(tail) + "\n";

    // conditional halving: events are nested across phases
    for (std::size_t p = 0; p < max_phases; ++p) {
      const std::size_t denom = p == 0 ? ran_count[0] : event_count[p - 1];
      const std::size_t numer = event_count[p];
      const double ratio =
          denom > 0 ? static_cast<double>(numer) / static_cast<double>(denom)
                    : 0.0;
      csv += name + "," + std::to_string(p + 1) + "," + std::to_string(numer) +
             "," + std::to_string(denom) + "," + format_double(ratio) + "\n";
      if (p > 0 && denom >= 500 && ratio > 0.6) case_ok = false;
    }

    detail << name << " tail=" << format_double(tail) << " ";
    all_ok = all_ok && case_ok;
  }

  bundle["reduce_tail.csv"] = csv;
  c.seconds = timer.seconds();
  c.pass = all_ok;
  c.detail = detail.str() + "over " + std::to_string(trials) + " trials, " +
             format_double(c.seconds) + "s";
  return c;
}

// --------------------------------------------------------- criterion 6

bool replay_invariant(const Instance& inst, int r, std::size_t trial) {
  AlgoConsts consts;
  GreedyConfig greedy_cfg;
  RngStream trial_stream = RngStream::from_path(kMasterSeed, {6, trial});
  RngStream real_rng = trial_stream.child(rng_tag::kRealization);
  Realization real = sample_realization(inst, real_rng);

  RngStream algo_a = trial_stream.child(rng_tag::kAlgorithm);
  ObservationGate gate_a(inst, real);
  RunRecord rec_a = r_round_adaptive(inst, r, algo_a, gate_a, consts, greedy_cfg);

  const ItemSet consumed = gate_a.consumed_items();
  std::int64_t victim = -1;
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    if (consumed.test(i)) continue;
    victim = static_cast<std::int64_t>(i);
    if (inst.item(i).support.size() > 1) break;  // prefer a real perturbation
  }
  if (victim < 0) return true;  // everything consumed; nothing to perturb

  Realization perturbed = real;
  const auto support = inst.item(victim).support.size();
  perturbed.outcomes[victim] = static_cast<std::int32_t>(
      (perturbed.outcomes[victim] + 1) % static_cast<std::int32_t>(support));

  RngStream algo_b = trial_stream.child(rng_tag::kAlgorithm);
  ObservationGate gate_b(inst, perturbed);
  RunRecord rec_b = r_round_adaptive(inst, r, algo_b, gate_b, consts, greedy_cfg);

  if (rec_a.rounds.size() != rec_b.rounds.size()) return false;
  for (std::size_t k = 0; k < rec_a.rounds.size(); ++k) {
    if (rec_a.rounds[k].plan.ordering != rec_b.rounds[k].plan.ordering)
      return false;
    if (rec_a.rounds[k].plan.tau != rec_b.rounds[k].plan.tau) return false;
  }
  return rec_a.total_cost == rec_b.total_cost;
}

Criterion criterion6(CsvBundle& bundle) {
  Timer timer;
  Criterion c{6, "r-round feasibility and gate soundness on 20 instances"};

  auto corpus = feasibility_corpus();
  ExperimentConfig cfg = base_config(10000);

  std::string csv = stats_csv_header() + "\n";
  std::size_t infeasible = 0;
  std::size_t replay_failures = 0;

  for (const auto& inst : corpus) {
    for (int r : {1, 2, 3}) {
      PolicySpec spec;
      spec.kind = PolicyKind::r_round;
      spec.r = r;
      try {
        // run_trials raises if any trial ends uncovered
        PolicyStats stats = run_trials(inst, spec, cfg);
        csv += inst.metadata().name + ":" +
               stats_csv_row("r-round", r, stats, cfg.master_seed) + "\n";
      } catch (const InvariantError&) {
        ++infeasible;
      }
      for (std::size_t trial = 0; trial < 2; ++trial)
        if (!replay_invariant(inst, r, trial)) ++replay_failures;
    }
  }

  bundle["feasibility.csv"] = csv;
  c.seconds = timer.seconds();
  c.pass = infeasible == 0 && replay_failures == 0;
  c.detail = std::to_string(corpus.size()) + " instances x r in {1,2,3} x " +
             std::to_string(cfg.trials) + " trials, " +
             std::to_string(infeasible) + " uncovered, " +
             std::to_string(replay_failures) + " replay failures, " +
             format_double(c.seconds) + "s";
  return c;
}

// --------------------------------------------------------- criterion 7

Criterion criterion7(CsvBundle& bundle) {
  Timer timer;
  Criterion c{7, "1-round adaptivity gap on singleton-gap instances"};

  bool ok = true;
  std::ostringstream detail;

  Instance sg4 = gen_singleton_gap(4);
  ExpectimaxOracle oracle4(sg4);
  if (oracle4.expected_cost() != Rational(2)) {
    ok = false;
    detail << "adaptive optimum != 2; ";
  }
  BruteForceResult best4 = best_nonadaptive_bruteforce(sg4);
  if (best4.expected_cost != Rational(7, 2)) {
    ok = false;
    detail << "best non-adaptive at n=4 != 7/2; ";
  }

  Instance sg20 = gen_singleton_gap(20);
  std::vector<std::uint32_t> identity(sg20.item_count());
  for (std::size_t i = 0; i < identity.size(); ++i)
    identity[i] = static_cast<std::uint32_t>(i);
  if (exec_nonadaptive_exact_cost(sg20, identity) != Rational(23, 2)) {
    ok = false;
    detail << "canonical ordering at n=20 != 23/2; ";
  }

  ExperimentConfig cfg = base_config(10000);
  auto rows = gap_experiment(sg20, {1, 2}, cfg);
  const double se1 =
      rows[0].stats.stddev / std::sqrt(static_cast<double>(rows[0].stats.trials));
  if (!(rows[0].stats.mean >= 11.5 - 3.0 * se1)) {
    ok = false;
    detail << "r=1 mean " << format_double(rows[0].stats.mean)
           << " below 11.5 - 3SE; ";
  }
  if (!(rows[1].ratio_to_oracle < rows[0].ratio_to_oracle)) {
    ok = false;
    detail << "ratio(r=2) not below ratio(r=1); ";
  }

  std::string csv = gap_csv_header() + "\n";
  for (const auto& row : rows) csv += gap_csv_row(row, cfg.master_seed) + "\n";
  bundle["singleton_gap.csv"] = csv;

  detail << "r=1 mean " << format_double(rows[0].stats.mean) << " (>= "
         << format_double(11.5 - 3.0 * se1) << "), ratios "
         << format_double(rows[0].ratio_to_oracle) << " vs "
         << format_double(rows[1].ratio_to_oracle);
  c.seconds = timer.seconds();
  c.pass = ok;
  c.detail = detail.str() + ", " + format_double(c.seconds) + "s";
  return c;
}

// --------------------------------------------------------- criterion 8

Criterion criterion8(CsvBundle& bundle) {
  Timer timer;
  Criterion c{8, "edifice family: verification, canonical policy, gap"};

  bool ok = true;
  std::ostringstream detail;
  std::string csv = stats_csv_header() + "\n";

  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint32_t k : {2u, 3u}) {
      HardInstance hard = build_hard_instance(build_edifice(p, k));
      const auto& ed = hard.edifice;

      EdificeReport report = verify_edifice(ed, 4 * k, p, k, p * p);
      if (!report.ok) {
        ok = false;
        detail << "verify failed p=" << p << " k=" << k << "; ";
        continue;
      }

      // canonical-path policy: exactly k+1 on every trial
      ExperimentConfig cfg = base_config(10000);
      PolicySpec spec;
      spec.kind = PolicyKind::canonical;
      PolicyStats stats = run_trials(hard.instance, spec, cfg);
      const double want = static_cast<double>(k + 1);
      if (stats.mean != want || stats.stddev != 0.0) {
        ok = false;
        detail << "canonical cost not exactly " << k + 1 << " at p=" << p
               << " k=" << k << "; ";
      }
      csv += hard.instance.metadata().name + ":" +
             stats_csv_row("canonical", 0, stats, cfg.master_seed) + "\n";

      // near-laminar intersection bound on random draws
      RngStream rng = RngStream::from_path(kMasterSeed, {8, p, k});
      const std::size_t draws = scaled(10000);
      for (std::size_t t = 0; t < draws; ++t) {
        Realization real = sample_realization(hard.instance, rng);
        auto path = canonical_path(hard, real);
        const auto leaf = path.back();
        const auto& leaf_set = ed.vertices[leaf].set;
        const std::uint32_t forbidden = hard.vertex_item[leaf];
        CoverMask covered(hard.instance.universe_size());
        std::size_t size = 0;
        for (std::size_t i = 0; i < hard.instance.item_count(); ++i) {
          if (i == forbidden) continue;
          if (rng.next_double() < 0.25) {
            covered |= hard.instance.cover_of(
                i, static_cast<std::size_t>(real.outcomes[i]));
            ++size;
          }
        }
        if (covered.count_and(leaf_set) > 4 * size * k) {
          ok = false;
          detail << "intersection bound violated at p=" << p << " k=" << k
                 << "; ";
          break;
        }
      }
    }
  }

  // empirical gap direction on the k=2, p=7 instance
  {
    HardInstance hard = build_hard_instance(build_edifice(7, 2));
    ExperimentConfig cfg = base_config(100);
    auto rows = gap_experiment(hard.instance, {1, 3}, cfg);
    std::string gap_csv = gap_csv_header() + "\n";
    for (const auto& row : rows)
      gap_csv += gap_csv_row(row, cfg.master_seed) + "\n";
    bundle["edifice_gap.csv"] = gap_csv;

    if (!(rows[0].stats.mean >= 2.0 * rows[1].stats.mean)) {
      ok = false;
      detail << "r=1 mean " << format_double(rows[0].stats.mean)
             << " not >= 2x r=3 mean " << format_double(rows[1].stats.mean)
             << "; ";
    } else {
      detail << "p7k2 r=1 mean " << format_double(rows[0].stats.mean)
             << " vs r=3 mean " << format_double(rows[1].stats.mean) << "; ";
    }
  }

  bundle["edifice_canonical.csv"] = csv;
  c.seconds = timer.seconds();
  c.pass = ok;
  c.detail = detail.str() + format_double(c.seconds) + "s";
  return c;
}

// --------------------------------------------------------- criterion 9

CsvBundle run_experiments(std::vector<Criterion>* criteria) {
  CsvBundle bundle;
  Criterion c4 = criterion4(bundle);
  Criterion c5 = criterion5(bundle);
  Criterion c6 = criterion6(bundle);
  Criterion c7 = criterion7(bundle);
  Criterion c8 = criterion8(bundle);
  if (criteria) {
    criteria->push_back(c4);
    criteria->push_back(c5);
    criteria->push_back(c6);
    criteria->push_back(c7);
    criteria->push_back(c8);
  }
  return bundle;
}

Criterion criterion9(const CsvBundle& first) {
  Timer timer;
  Criterion c{9, "determinism: identical CSV outputs across executions"};
  CsvBundle second = run_experiments(nullptr);

  std::size_t mismatches = 0;
  if (first.size() != second.size()) ++mismatches;
  for (const auto& [name, text] : first) {
    auto it = second.find(name);
    if (it == second.end() || it->second != text) ++mismatches;
  }

  c.seconds = timer.seconds();
  c.pass = mismatches == 0;
  c.detail = std::to_string(first.size()) + " files compared, " +
             std::to_string(mismatches) + " mismatches, " +
             format_double(c.seconds) + "s";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = "acceptance_out";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out" && i + 1 < argc) out_dir = argv[++i];
    if (arg == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
    if (arg == "--scale" && i + 1 < argc) g_scale = std::atof(argv[++i]);
  }
  if (const char* env = std::getenv("SSC_ACCEPT_SCALE")) g_scale = std::atof(env);
  if (g_scale <= 0) g_scale = 1.0;

  if (g_scale != 1.0) {
    std::cout << "*** SCALED RUN (scale=" << g_scale
              << ") — development only, NOT an acceptance run ***\n";
  }
  std::cout << "master seed " << kMasterSeed << ", threads " << g_threads
            << "\n";

  std::vector<Criterion> criteria;
  Timer total;

  criteria.push_back(criterion1());
  criteria2and3(criteria);

  CsvBundle bundle = run_experiments(&criteria);
  criteria.push_back(criterion9(bundle));

  std::filesystem::create_directories(out_dir);
  for (const auto& [name, text] : bundle) {
    std::ofstream out(out_dir + "/" + name, std::ios::binary);
    out << text;
  }

  std::sort(criteria.begin(), criteria.end(),
            [](const Criterion& a, const Criterion& b) { return a.id < b.id; });

  int failures = 0;
  for (const auto& c : criteria) {
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id
              << ": " << c.name << " — " << c.detail << "\n";
    if (!c.pass) ++failures;
  }
  std::cout << (failures == 0 ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED") << " ("
            << format_double(total.seconds()) << "s total, CSV in " << out_dir
            << ")\n";
  return failures;
}
