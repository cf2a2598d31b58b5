#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/errors.hpp"
#include "sscover/rational.hpp"

namespace ssc {

// One element of the ground set E. For coverage instances the payload is
// the set of universe points it covers.
struct GroundElement {
  CoverMask covers;
  std::string label;
};

// Integer-valued monotone submodular function over an explicit ground
// list. Subsets are bitsets over ground indices. Implementations must be
// immutable after construction; all operations are read-only.
class SubmodularFn {
 public:
  virtual ~SubmodularFn() = default;

  virtual std::size_t ground_size() const = 0;
  virtual std::int64_t eval(const Bitset& subset) const = 0;

  // f_S(T) = f(S ∪ T) − f(S)
  std::int64_t marginal(const Bitset& s, const Bitset& t) const {
    return eval(s | t) - eval(s);
  }

  std::int64_t q_max() const { return eval(Bitset::full(ground_size())); }
};

// f(S) = |union of covers(e) for e in S|
class CoverageFn : public SubmodularFn {
 public:
  CoverageFn(std::uint32_t universe_size, std::vector<GroundElement> elements)
      : universe_size_(universe_size), elements_(std::move(elements)) {}

  std::size_t ground_size() const override { return elements_.size(); }

  std::int64_t eval(const Bitset& subset) const override {
    if (subset.size() != elements_.size())
      throw DomainError("subset width does not match ground set");
    CoverMask u(universe_size_);
    for (std::size_t w = 0; w < subset.word_count(); ++w) {
      std::uint64_t x = subset.data()[w];
      while (x) {
        std::size_t i = w * 64 + std::countr_zero(x);
        x &= x - 1;
        u |= elements_[i].covers;
      }
    }
    return static_cast<std::int64_t>(u.count());
  }

  std::uint32_t universe_size() const { return universe_size_; }
  const GroundElement& element(std::size_t i) const { return elements_[i]; }
  const std::vector<GroundElement>& elements() const { return elements_; }

 private:
  std::uint32_t universe_size_;
  std::vector<GroundElement> elements_;
};

// Explicit value table over a small ground set (for checker tests and
// user-supplied functions). Values indexed by subset bitmask.
class TableFn : public SubmodularFn {
 public:
  static constexpr std::size_t kMaxGround = 20;

  TableFn(std::size_t n, std::vector<std::int64_t> value_by_subset)
      : n_(n), table_(std::move(value_by_subset)) {
    if (n > kMaxGround) throw CapacityError("table function limited to 20 elements");
    if (table_.size() != (std::size_t(1) << n))
      throw InvariantError("table size must be 2^n");
  }

  std::size_t ground_size() const override { return n_; }
  std::int64_t eval(const Bitset& subset) const override {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i < n_; ++i)
      if (subset.test(i)) key |= 1u << i;
    return table_[key];
  }

 private:
  std::size_t n_;
  std::vector<std::int64_t> table_;
};

// f_S materialized as a function of T; the closure checks run against this.
class MarginalFn : public SubmodularFn {
 public:
  MarginalFn(const SubmodularFn& base, Bitset s)
      : base_(base), s_(std::move(s)), f_s_(base.eval(s_)) {}

  std::size_t ground_size() const override { return base_.ground_size(); }
  std::int64_t eval(const Bitset& subset) const override {
    return base_.eval(s_ | subset) - f_s_;
  }

 private:
  const SubmodularFn& base_;
  Bitset s_;
  std::int64_t f_s_;
};

struct StructureWitness {
  Bitset s;
  Bitset t;
  std::size_t element = 0;
};

struct StructureReport {
  bool monotone = true;
  bool submodular = true;
  bool normalized = true;  // f(∅) = 0
  std::optional<StructureWitness> monotone_witness;
  std::optional<StructureWitness> submodular_witness;
  bool ok() const { return monotone && submodular && normalized; }
};

// Exhaustive monotonicity/submodularity check over a value oracle with
// exact values; 2^n enumeration, n ≤ 20. The rational overload serves
// expectation-valued functions (F over item sets), the integer overload
// plain submodular functions.
StructureReport check_monotone_submodular(
    std::size_t n, const std::function<Rational(const Bitset&)>& value);

StructureReport check_monotone_submodular(
    std::size_t n, const std::function<std::int64_t(const Bitset&)>& value);

StructureReport check_monotone_submodular(const SubmodularFn& f);

}  // namespace ssc
