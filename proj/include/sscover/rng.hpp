#pragma once

#include <cstdint>
#include <initializer_list>

namespace ssc {

// Counter-based splittable stream. Every consumer derives its own stream
// from (master seed, path of tags), so trial-level parallelism cannot
// change the numbers any consumer sees.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static RngStream from_path(std::uint64_t master,
                             std::initializer_list<std::uint64_t> path) {
    std::uint64_t k = mix(master ^ 0x5ca1ab1e0ddba11ull);
    for (std::uint64_t tag : path) k = mix(k ^ mix(tag));
    return RngStream(k);
  }

  // Derive a child stream without consuming from this one.
  RngStream child(std::uint64_t tag) const {
    return RngStream(mix(key_ ^ mix(tag ^ 0xabcdef1234567890ull)));
  }

  std::uint64_t next_u64() { return mix(key_ + 0x632be59bd9b4e019ull * ++ctr_); }

  // Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (-n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
};

// Stream-path tags, one per module that draws randomness.
namespace rng_tag {
inline constexpr std::uint64_t kRealization = 1;
inline constexpr std::uint64_t kAlgorithm = 2;
inline constexpr std::uint64_t kTrial = 3;
inline constexpr std::uint64_t kRound = 4;
inline constexpr std::uint64_t kPhase = 5;
inline constexpr std::uint64_t kSelect = 6;
inline constexpr std::uint64_t kGreedy = 7;
inline constexpr std::uint64_t kSampler = 8;
inline constexpr std::uint64_t kGenerator = 9;
}  // namespace rng_tag

}  // namespace ssc
