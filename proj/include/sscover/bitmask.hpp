#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ssc {

// Dynamic fixed-width bitset. Used both for coverage masks over universe
// points and for item index sets; union + popcount are the hot path.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  // a \ b
  Bitset minus(const Bitset& o) const {
    Bitset r(*this);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
    return r;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  std::size_t count_and(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] & o.words_[i]);
    return c;
  }
  std::size_t count_or(const Bitset& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += std::popcount(words_[i] | o.words_[i]);
    return c;
  }

  bool operator==(const Bitset& o) const = default;
  bool operator<(const Bitset& o) const {
    if (nbits_ != o.nbits_) return nbits_ < o.nbits_;
    return words_ < o.words_;
  }

  std::vector<std::size_t> to_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      while (x) {
        out.push_back(w * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

  static Bitset full(std::size_t nbits) {
    Bitset b(nbits);
    for (std::size_t i = 0; i < nbits; ++i) b.set(i);
    return b;
  }

  struct Hash {
    std::size_t operator()(const Bitset& b) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull ^ b.size();
      for (std::uint64_t w : b.words_) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

using CoverMask = Bitset;  // subset of universe points
using ItemSet = Bitset;    // subset of item indices

// Raw-word helpers for batched Monte-Carlo scoring.
inline std::size_t or_count(const std::uint64_t* a, const std::uint64_t* b,
                            std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i] | b[i]);
  return c;
}
inline void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}
inline std::size_t word_popcount(const std::uint64_t* a, std::size_t words) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < words; ++i) c += std::popcount(a[i]);
  return c;
}

}  // namespace ssc
