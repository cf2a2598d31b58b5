#include <doctest.h>

#include <sstream>

#include "sscover/greedy.hpp"
#include "sscover/lp.hpp"

using namespace ssc;

namespace {

Instance one_item_full_cover(std::int64_t cost) {
  const std::uint32_t n = 4;
  std::vector<GroundElement> pool;
  pool.push_back({CoverMask::full(n), "all"});
  std::vector<StochasticItem> items(1);
  items[0].cost = cost;
  items[0].support = {{Rational(1), 0}};
  return Instance(n, pool, items, InstanceMetadata{});
}

Instance corpus_instance(std::uint64_t seed) {
  RandomSetCoverParams params;
  params.n = 5;
  params.m = 4;  // +1 completion item
  params.max_support = 3;
  params.max_cost = 3;
  params.seed = seed;
  return gen_random_setcover(params);
}

Instance scale_costs(const Instance& inst, std::int64_t factor) {
  auto items = inst.items();
  for (auto& item : items) item.cost *= factor;
  return Instance(inst.universe_size(), inst.pool(), items, inst.metadata());
}

}  // namespace

TEST_CASE("single full-cover item: rows and optimum") {
  Instance inst = one_item_full_cover(5);
  WolseyLP lp = build_lp(inst);
  REQUIRE(lp.rows.size() == 2);
  CHECK(lp.rows[0].subset == 0);
  CHECK(lp.rows[0].coeff[0] == Rational(4));  // F_∅(1) = Q
  CHECK(lp.rows[0].rhs == Rational(4));       // Q − 2F(∅) = Q
  CHECK(lp.rows[1].rhs == Rational(-4));      // Q − 2Q < 0, vacuous

  LpSolution sol = solve_lp(lp);
  CHECK(sol.objective == Rational(5));
  CHECK(sol.y[0] == Rational(1));
}

TEST_CASE("F(0) = 0 in every LP") {
  WolseyLP lp = build_lp(corpus_instance(1));
  CHECK(lp.rows[0].rhs == lp.q_tilde);  // rhs at A=∅ is Q̃ − 2·0
}

TEST_CASE("constraint coefficients match marginals recomputed independently") {
  Instance inst = corpus_instance(2);
  WolseyLP lp = build_lp(inst);
  const std::size_t m = inst.item_count();
  for (std::uint32_t subset : {0u, 3u, 5u, (1u << m) - 2}) {
    ItemSet a(m);
    for (std::size_t i = 0; i < m; ++i)
      if (subset & (1u << i)) a.set(i);
    const Rational f_a = expected_coverage_exact(inst, a);
    for (std::size_t i = 0; i < m; ++i) {
      if (subset & (1u << i)) continue;
      ItemSet ai = a;
      ai.set(i);
      CHECK(lp.rows[subset].coeff[i] ==
            expected_coverage_exact(inst, ai) - f_a);
    }
  }
}

TEST_CASE("all-ones is feasible; zero is not") {
  for (std::uint64_t seed : {1, 2, 3}) {
    Instance inst = corpus_instance(seed);
    WolseyLP lp = build_lp(inst);
    std::vector<Rational> ones(lp.m, Rational(1));
    CHECK(check_feasible(lp, ones).feasible);

    std::vector<Rational> zeros(lp.m, Rational(0));
    auto report = check_feasible(lp, zeros);
    CHECK_FALSE(report.feasible);
    CHECK(report.violated_row == 0u);  // the A=∅ row
  }
}

TEST_CASE("optimal-policy usage vector is LP-feasible and prices the optimum") {
  for (std::uint64_t seed : {4, 5}) {
    Instance inst = corpus_instance(seed);
    WolseyLP lp = build_lp(inst);
    ExpectimaxOracle oracle(inst);
    const Rational opt = oracle.expected_cost();
    std::vector<Rational> w = opt_policy_to_w(oracle);

    CHECK(check_feasible(lp, w).feasible);

    Rational w_dot_c(0);
    for (std::size_t i = 0; i < lp.m; ++i) w_dot_c += w[i] * lp.costs[i];
    CHECK(w_dot_c == opt);

    LpSolution sol = solve_lp(lp);
    CHECK(sol.objective <= w_dot_c);
  }
}

TEST_CASE("singleton-gap usage vector") {
  Instance inst = gen_singleton_gap(4);
  ExpectimaxOracle oracle(inst);
  std::vector<Rational> w = opt_policy_to_w(oracle);
  CHECK(w[0] == Rational(1));
  for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] == Rational(1, 4));
}

TEST_CASE("objective scales with the costs") {
  Instance inst = corpus_instance(6);
  LpSolution base = solve_lp(build_lp(inst));
  LpSolution scaled = solve_lp(build_lp(scale_costs(inst, 3)));
  CHECK(scaled.objective == 3 * base.objective);
}

TEST_CASE("vacuous rows never change the optimum") {
  Instance inst = corpus_instance(7);
  WolseyLP lp = build_lp(inst);
  LpSolution pruned = solve_lp(lp, {.include_vacuous_rows = false});
  LpSolution full = solve_lp(lp, {.include_vacuous_rows = true});
  CHECK(pruned.objective == full.objective);
}

TEST_CASE("greedy cost stays within three times the LP optimum") {
  RngStream rng(11);
  GreedyConfig cfg;
  cfg.eval = GreedyEval::exact;
  for (std::uint64_t seed : {8, 9, 10}) {
    Instance inst = corpus_instance(seed);
    auto trace = non_adapt_greedy(inst, CoverMask(inst.universe_size()),
                                  inst.all_items(), inst.q(), cfg, rng);
    LpSolution sol = solve_lp(build_lp(inst));
    CHECK(Rational(trace.cost) <= 3 * sol.objective);
    CHECK(3 * trace.f_exact.back() >= inst.q());
  }
}

TEST_CASE("plain-text dump has one row per subset") {
  Instance inst = one_item_full_cover(2);
  WolseyLP lp = build_lp(inst);
  std::ostringstream out;
  dump_lp(lp, out);
  CHECK(out.str() == "0 4 4\n1 0 -4\n");
}
