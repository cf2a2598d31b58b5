#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sscover/bitmask.hpp"
#include "sscover/instance.hpp"

namespace ssc {

// (s,b,k,d)-edifice: a complete d-ary k-level rooted tree with a set per
// vertex; ancestor sets nest, leaf sets have size b, and a leaf set meets
// any non-ancestor set in at most s points.
//
// Construction over F_p^k: a level-i vertex is a sequence of i−1 linear
// polynomials q(x) = a·x + b; its set is
//   { (x, q_1(x), ..., q_{i−1}(x), y_{i+1}, ..., y_k) : x ∈ F_p, y free }.
// Children extend the sequence by one polynomial, so d = p². Two vertices
// whose sequences diverge share at most one x (distinct linear
// polynomials agree on at most one field element), which gives
// intersection ≤ 1 ≤ s = 4k.
struct EdificeVertex {
  int level = 1;                  // root at level 1, leaves at level k
  std::int32_t parent = -1;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> polys;  // (a, b) pairs
  CoverMask set;
  std::vector<std::uint32_t> children;  // in (a, b) lexicographic order
};

struct Edifice {
  std::uint32_t p = 0;  // prime; plays N
  std::uint32_t k = 0;  // levels
  std::uint32_t s = 0;  // = 4k
  std::uint32_t b = 0;  // = p
  std::uint32_t d = 0;  // = p^2
  std::uint32_t universe_size = 0;  // p^k
  std::vector<EdificeVertex> vertices;  // BFS order, root first
  std::vector<std::uint32_t> leaves;
};

bool is_prime(std::uint64_t n);

inline constexpr std::uint64_t kMaxEdificeUniverse = std::uint64_t(1) << 20;

Edifice build_edifice(std::uint32_t p, std::uint32_t k);

struct EdificeViolation {
  int property = 0;  // 1, 2 or 3 per the definition
  std::string detail;
};

struct EdificeReport {
  bool ok = true;
  std::vector<EdificeViolation> violations;
};

// Exhaustive check of properties I-III for the given parameters.
EdificeReport verify_edifice(const Edifice& ed, std::uint32_t s, std::uint32_t b,
                             std::uint32_t k, std::uint32_t d);

// The hard-instance family: one uniform item per tree vertex plus one
// deterministic singleton per universe point, unit costs. Items are
// ordered BFS over the tree, then elements ascending.
struct HardInstance {
  Edifice edifice;
  Instance instance;
  std::vector<std::uint32_t> vertex_item;   // vertex id -> item index
  std::vector<std::uint32_t> element_item;  // point id -> item index
};

HardInstance build_hard_instance(const Edifice& ed);

// Rebuilds the edifice layout from an instance produced by
// build_hard_instance (via its metadata); DomainError when the instance
// is not from this family.
HardInstance hard_instance_from(const Instance& inst);

// Root-to-leaf canonical path of a realization: each next vertex is the
// child whose set the realized vertex item removed.
std::vector<std::uint32_t> canonical_path(const HardInstance& hard,
                                          const Realization& real);

// One trial of the canonical-path policy: walk the path, then pick the
// singleton for the leaf's missing element. Costs k+1 on every
// realization and always finishes with full coverage.
std::int64_t canonical_path_trial(const HardInstance& hard,
                                  const Realization& real,
                                  std::vector<std::uint32_t>* picked = nullptr);

}  // namespace ssc
