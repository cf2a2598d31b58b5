#include "sscover/submodular.hpp"

#include <vector>

namespace ssc {

namespace {

Bitset from_key(std::size_t n, std::uint32_t key) {
  Bitset b(n);
  for (std::size_t i = 0; i < n; ++i)
    if (key & (1u << i)) b.set(i);
  return b;
}

// Local characterizations, each equivalent to the subset-pair definition:
//   monotone    iff for all T, e ∉ T:        f(T ∪ e) ≥ f(T)
//   submodular  iff for all T, e ≠ e' ∉ T:   f_T(e) ≥ f_{T∪e'}(e)
// A local violation yields a witness (S, T, e) of the global definition
// with S = T and T = T ∪ {e'}.
template <typename Value>
StructureReport check_table(std::size_t n, const std::vector<Value>& val) {
  StructureReport report;
  const std::size_t total = std::size_t(1) << n;
  report.normalized = (val[0] == 0);

  for (std::uint32_t key = 0; key < total && report.monotone; ++key) {
    for (std::size_t e = 0; e < n; ++e) {
      if (key & (1u << e)) continue;
      if (val[key | (1u << e)] < val[key]) {
        report.monotone = false;
        report.monotone_witness =
            StructureWitness{from_key(n, key), from_key(n, key | (1u << e)), e};
        break;
      }
    }
  }

  for (std::uint32_t key = 0; key < total && report.submodular; ++key) {
    for (std::size_t e1 = 0; e1 < n && report.submodular; ++e1) {
      if (key & (1u << e1)) continue;
      const Value m_small = val[key | (1u << e1)] - val[key];
      for (std::size_t e2 = 0; e2 < n; ++e2) {
        if (e2 == e1 || (key & (1u << e2))) continue;
        const std::uint32_t sup = key | (1u << e2);
        const Value m_large = val[sup | (1u << e1)] - val[sup];
        if (m_small < m_large) {
          report.submodular = false;
          report.submodular_witness =
              StructureWitness{from_key(n, key), from_key(n, sup), e1};
          break;
        }
      }
    }
  }
  return report;
}

template <typename Value>
StructureReport check_oracle(std::size_t n,
                             const std::function<Value(const Bitset&)>& value) {
  if (n > TableFn::kMaxGround)
    throw CapacityError("check_monotone_submodular: ground set larger than 20");
  std::vector<Value> val(std::size_t(1) << n);
  for (std::uint32_t key = 0; key < val.size(); ++key)
    val[key] = value(from_key(n, key));
  return check_table(n, val);
}

}  // namespace

StructureReport check_monotone_submodular(
    std::size_t n, const std::function<Rational(const Bitset&)>& value) {
  return check_oracle<Rational>(n, value);
}

StructureReport check_monotone_submodular(
    std::size_t n, const std::function<std::int64_t(const Bitset&)>& value) {
  return check_oracle<std::int64_t>(n, value);
}

StructureReport check_monotone_submodular(const SubmodularFn& f) {
  return check_monotone_submodular(
      f.ground_size(),
      std::function<std::int64_t(const Bitset&)>(
          [&f](const Bitset& s) { return f.eval(s); }));
}

}  // namespace ssc
