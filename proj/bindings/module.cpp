#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sscover/edifice.hpp"
#include "sscover/harness.hpp"
#include "sscover/lp.hpp"

namespace py = pybind11;
using namespace ssc;

namespace {

ExperimentConfig make_config(std::uint64_t seed, std::size_t trials,
                             int threads, std::size_t mc_samples) {
  ExperimentConfig cfg;
  cfg.master_seed = seed;
  cfg.trials = trials;
  cfg.threads = threads;
  cfg.mc_samples = mc_samples;
  return cfg;
}

py::dict stats_dict(const PolicyStats& stats) {
  py::dict d;
  d["trials"] = stats.trials;
  d["mean"] = stats.mean;
  d["std"] = stats.stddev;
  d["ci95"] = stats.ci95;
  d["cost_sum"] = stats.cost_sum;
  return d;
}

py::dict rational_dict(const Rational& q) {
  py::dict d;
  d["exact"] = to_string(q);
  d["value"] = to_double(q);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "r-round adaptive stochastic submodular cover workbench";

  py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<CapacityError>(m, "CapacityError");
  py::register_exception<InvariantError>(m, "InvariantError");

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("m", &Instance::item_count)
      .def_property_readonly("q", &Instance::q)
      .def_property_readonly("universe_size", &Instance::universe_size)
      .def_property_readonly("max_cost", &Instance::max_cost)
      .def_property_readonly(
          "name", [](const Instance& inst) { return inst.metadata().name; })
      .def("to_json", [](const Instance& inst) { return instance_to_string(inst); })
      .def("__repr__", [](const Instance& inst) {
        return "<Instance m=" + std::to_string(inst.item_count()) +
               " Q=" + std::to_string(inst.q()) + ">";
      });

  m.def("gen_singleton_gap", &gen_singleton_gap, py::arg("n"));
  m.def(
      "gen_random_setcover",
      [](std::uint32_t n, std::uint32_t m_items, std::uint32_t max_support,
         double density, std::int64_t max_cost, std::uint64_t seed) {
        RandomSetCoverParams params;
        params.n = n;
        params.m = m_items;
        params.max_support = max_support;
        params.density = density;
        params.max_cost = max_cost;
        params.seed = seed;
        return gen_random_setcover(params);
      },
      py::arg("n") = 6, py::arg("m") = 5, py::arg("max_support") = 3,
      py::arg("density") = 0.5, py::arg("max_cost") = 1, py::arg("seed") = 1);
  m.def(
      "gen_edifice_hard",
      [](std::uint32_t p, std::uint32_t k) {
        return build_hard_instance(build_edifice(p, k)).instance;
      },
      py::arg("p"), py::arg("k"));

  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("loads_instance", &instance_from_string, py::arg("text"));
  m.def("save_instance", &save_instance, py::arg("instance"), py::arg("path"));

  m.def(
      "verify_instance",
      [](const Instance& inst, std::size_t trials, std::uint64_t seed) {
        RngStream rng = RngStream::from_path(seed, {rng_tag::kTrial});
        auto feas = check_always_feasible(inst, kDefaultExactBudget, trials, rng);
        py::dict d;
        d["feasible"] = feas.feasible;
        d["exhaustive"] = feas.exhaustive;
        d["checked"] = feas.checked;
        if (inst.metadata().generator == "edifice-hard") {
          HardInstance hard = hard_instance_from(inst);
          const auto& ed = hard.edifice;
          d["edifice_ok"] = verify_edifice(ed, ed.s, ed.b, ed.k, ed.d).ok;
        }
        return d;
      },
      py::arg("instance"), py::arg("trials") = 10000, py::arg("seed") = 1);

  m.def(
      "expected_coverage",
      [](const Instance& inst, const std::vector<std::uint32_t>& items,
         const std::string& mode, std::size_t samples, std::uint64_t seed) {
        ItemSet a(inst.item_count());
        for (auto i : items) a.set(i);
        if (mode == "exact") {
          return rational_dict(expected_coverage_exact(inst, a));
        }
        if (mode == "mc") {
          RngStream rng = RngStream::from_path(seed, {rng_tag::kTrial});
          py::dict d;
          d["value"] = expected_coverage_mc(inst, a, samples, rng);
          return d;
        }
        throw UsageError("mode must be 'exact' or 'mc'");
      },
      py::arg("instance"), py::arg("items"), py::arg("mode") = "exact",
      py::arg("samples") = 4096, py::arg("seed") = 1);

  m.def(
      "oracle_expected_cost",
      [](const Instance& inst) {
        ExpectimaxOracle oracle(inst);
        return rational_dict(oracle.expected_cost());
      },
      py::arg("instance"));

  m.def(
      "best_nonadaptive",
      [](const Instance& inst) {
        BruteForceResult best = best_nonadaptive_bruteforce(inst);
        py::dict d = rational_dict(best.expected_cost);
        d["ordering"] = best.ordering;
        return d;
      },
      py::arg("instance"));

  m.def(
      "run",
      [](const Instance& inst, const std::string& policy, int r,
         std::size_t trials, std::uint64_t seed, int threads,
         std::size_t mc_samples) {
        PolicySpec spec = parse_policy(policy, r);
        ExperimentConfig cfg = make_config(seed, trials, threads, mc_samples);
        PolicyStats stats = run_trials(inst, spec, cfg);
        py::dict d = stats_dict(stats);
        d["policy"] = spec.name();
        d["r"] = spec.kind == PolicyKind::r_round ? r : 0;
        d["seed"] = seed;
        d["csv"] = stats_csv_row(spec.name(),
                                 spec.kind == PolicyKind::r_round ? r : 0,
                                 stats, seed);
        return d;
      },
      py::arg("instance"), py::arg("policy"), py::arg("r") = 1,
      py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("threads") = 1,
      py::arg("mc_samples") = 2048);

  m.def(
      "gap",
      [](const Instance& inst, const std::vector<int>& r_values,
         std::size_t trials, std::uint64_t seed, int threads,
         std::size_t mc_samples) {
        ExperimentConfig cfg = make_config(seed, trials, threads, mc_samples);
        auto rows = gap_experiment(inst, r_values, cfg);
        py::list out;
        for (const auto& row : rows) {
          py::dict d = stats_dict(row.stats);
          d["r"] = row.r;
          d["oracle_cost"] = row.oracle_cost;
          d["ratio_to_oracle"] = row.ratio_to_oracle;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("instance"), py::arg("r_values"), py::arg("trials") = 1000,
      py::arg("seed") = 1, py::arg("threads") = 1, py::arg("mc_samples") = 2048);

  m.def(
      "lp_solve",
      [](const Instance& inst, bool check_w) {
        WolseyLP lp = build_lp(inst);
        LpSolution sol = solve_lp(lp);
        py::dict d;
        d["p"] = rational_dict(sol.objective);
        py::list y;
        for (const auto& v : sol.y) y.append(rational_dict(v));
        d["y"] = std::move(y);
        if (check_w) {
          ExpectimaxOracle oracle(inst);
          std::vector<Rational> w = opt_policy_to_w(oracle);
          d["w_feasible"] = check_feasible(lp, w).feasible;
          Rational w_dot_c(0);
          for (std::size_t i = 0; i < lp.m; ++i) w_dot_c += w[i] * lp.costs[i];
          d["opt_cost"] = rational_dict(w_dot_c);
          d["p_below_opt"] = sol.objective <= w_dot_c;
        }
        return d;
      },
      py::arg("instance"), py::arg("check_w") = false);

  m.def("stats_csv_header", &stats_csv_header);
}
