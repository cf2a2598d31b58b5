#include <doctest.h>

#include "sscover/instance.hpp"
#include "sscover/rng.hpp"
#include "sscover/submodular.hpp"

using namespace ssc;

namespace {

CoverMask mask_of(std::uint32_t n, std::initializer_list<std::size_t> points) {
  CoverMask m(n);
  for (auto p : points) m.set(p);
  return m;
}

CoverageFn small_coverage() {
  std::vector<GroundElement> elems;
  elems.push_back({mask_of(4, {0, 1}), "a"});
  elems.push_back({mask_of(4, {1, 2}), "b"});
  elems.push_back({mask_of(4, {3}), "c"});
  return CoverageFn(4, std::move(elems));
}

Bitset subset(std::size_t n, std::initializer_list<std::size_t> idx) {
  Bitset s(n);
  for (auto i : idx) s.set(i);
  return s;
}

CoverageFn random_coverage(std::uint32_t n, std::size_t ground, RngStream& rng) {
  std::vector<GroundElement> elems;
  for (std::size_t i = 0; i < ground; ++i) {
    CoverMask m(n);
    for (std::uint32_t p = 0; p < n; ++p)
      if (rng.next_double() < 0.45) m.set(p);
    elems.push_back({m, "g" + std::to_string(i)});
  }
  return CoverageFn(n, std::move(elems));
}

}  // namespace

TEST_CASE("coverage eval is the union cardinality") {
  CoverageFn f = small_coverage();
  CHECK(f.eval(subset(3, {0, 1})) == 3);
  CHECK(f.eval(subset(3, {})) == 0);
  CHECK(f.q_max() == 4);
}

TEST_CASE("eval rejects foreign subsets") {
  CoverageFn f = small_coverage();
  CHECK_THROWS_AS(f.eval(subset(5, {4})), DomainError);
}

TEST_CASE("marginal matches an independent union recomputation") {
  CoverageFn f = small_coverage();
  CHECK(f.marginal(subset(3, {0}), subset(3, {1})) == 1);
  CHECK(f.marginal(subset(3, {0, 1}), subset(3, {1})) == 0);

  RngStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    CoverageFn g = random_coverage(6, 5, rng);
    Bitset s(5), t(5);
    for (std::size_t i = 0; i < 5; ++i) {
      if (rng.next_double() < 0.5) s.set(i);
      if (rng.next_double() < 0.5) t.set(i);
    }
    // recompute via raw masks
    CoverMask us(6), ust(6);
    for (std::size_t i = 0; i < 5; ++i) {
      if (s.test(i)) us |= g.element(i).covers;
      if (s.test(i) || t.test(i)) ust |= g.element(i).covers;
    }
    CHECK(g.marginal(s, t) ==
          static_cast<std::int64_t>(ust.count()) -
              static_cast<std::int64_t>(us.count()));
  }
}

TEST_CASE("eval is pure") {
  CoverageFn f = small_coverage();
  auto s = subset(3, {0, 2});
  CHECK(f.eval(s) == f.eval(s));
}

TEST_CASE("checker accepts coverage and capped cardinality") {
  CHECK(check_monotone_submodular(small_coverage()).ok());

  // f(S) = min(|S|, 2)
  std::vector<std::int64_t> table(8);
  for (std::uint32_t k = 0; k < 8; ++k)
    table[k] = std::min<std::int64_t>(std::popcount(k), 2);
  TableFn capped(3, table);
  auto report = check_monotone_submodular(capped);
  CHECK(report.monotone);
  CHECK(report.submodular);
}

TEST_CASE("checker rejects |S|^2 with a witness") {
  std::vector<std::int64_t> table(8);
  for (std::uint32_t k = 0; k < 8; ++k) {
    const std::int64_t c = std::popcount(k);
    table[k] = c * c;
  }
  TableFn f(3, table);
  auto report = check_monotone_submodular(f);
  CHECK(report.monotone);
  CHECK_FALSE(report.submodular);
  REQUIRE(report.submodular_witness.has_value());
  const auto& w = *report.submodular_witness;
  // the witness certifies f_S(e) < f_T(e) with S within T
  CHECK(w.s.is_subset_of(w.t));
  const std::int64_t fs = f.eval(w.s | subset(3, {w.element})) - f.eval(w.s);
  const std::int64_t ft = f.eval(w.t | subset(3, {w.element})) - f.eval(w.t);
  CHECK(fs < ft);
}

TEST_CASE("checker reports non-normalized functions") {
  std::vector<std::int64_t> table = {1, 2, 2, 3};
  TableFn f(2, table);
  CHECK_FALSE(check_monotone_submodular(f).normalized);
}

TEST_CASE("checker refuses more than 20 elements") {
  CHECK_THROWS_AS(check_monotone_submodular(
                      21, [](const Bitset&) { return Rational(0); }),
                  CapacityError);
}

TEST_CASE("marginal bound holds on random coverage functions") {
  RngStream rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    CoverageFn f = random_coverage(7, 6, rng);
    for (int rep = 0; rep < 20; ++rep) {
      Bitset s(6), t(6);
      for (std::size_t i = 0; i < 6; ++i) {
        if (rng.next_double() < 0.5) s.set(i);
        if (rng.next_double() < 0.5) t.set(i);
      }
      std::int64_t rhs = f.eval(t);
      for (std::size_t e = 0; e < 6; ++e) {
        if (s.test(e) && !t.test(e)) rhs += f.marginal(t, subset(6, {e}));
      }
      CHECK(f.eval(s) <= rhs);
    }
  }
}

TEST_CASE("every materialized marginal stays monotone submodular") {
  RngStream rng(23);
  CoverageFn f = random_coverage(6, 5, rng);
  for (std::uint32_t key = 0; key < 32; ++key) {
    Bitset s(5);
    for (std::size_t i = 0; i < 5; ++i)
      if (key & (1u << i)) s.set(i);
    MarginalFn fs(f, s);
    CHECK(check_monotone_submodular(fs).ok());
  }
}
