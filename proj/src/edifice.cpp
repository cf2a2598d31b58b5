#include "sscover/edifice.hpp"

#include <algorithm>

#include "sscover/errors.hpp"

namespace ssc {

namespace {

// Point (t_1, ..., t_k) in F_p^k encoded as sum t_i * p^{i-1}.
std::uint32_t pow_u32(std::uint32_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) r *= base;
  if (r > kMaxEdificeUniverse)
    throw CapacityError("edifice universe exceeds the point budget");
  return static_cast<std::uint32_t>(r);
}

CoverMask vertex_set(std::uint32_t p, std::uint32_t k,
                     const std::vector<std::pair<std::uint16_t, std::uint16_t>>& polys,
                     std::uint32_t universe) {
  // Fixed coordinates: c_1 = x, c_{j+1} = q_j(x); the rest range freely.
  const auto fixed = static_cast<std::uint32_t>(polys.size() + 1);
  const std::uint32_t free_coords = k - fixed;
  CoverMask mask(universe);
  std::uint32_t free_total = 1;
  for (std::uint32_t i = 0; i < free_coords; ++i) free_total *= p;

  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t prefix = x;
    std::uint64_t scale = p;
    for (const auto& [a, b] : polys) {
      const std::uint64_t v = (std::uint64_t(a) * x + b) % p;
      prefix += v * scale;
      scale *= p;
    }
    for (std::uint32_t free = 0; free < free_total; ++free) {
      std::uint64_t point = prefix;
      std::uint64_t f = free;
      std::uint64_t s = scale;
      for (std::uint32_t i = 0; i < free_coords; ++i) {
        point += (f % p) * s;
        f /= p;
        s *= p;
      }
      mask.set(point);
    }
  }
  return mask;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

Edifice build_edifice(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw DomainError("edifice: p must be prime");
  if (p < 3) throw DomainError("edifice: p must be at least 3");
  if (k < 1) throw DomainError("edifice: k must be at least 1");

  Edifice ed;
  ed.p = p;
  ed.k = k;
  ed.s = 4 * k;
  ed.b = p;
  ed.d = p * p;
  ed.universe_size = pow_u32(p, k);

  // BFS construction, children in (a, b) lexicographic order.
  EdificeVertex root;
  root.level = 1;
  root.set = vertex_set(p, k, {}, ed.universe_size);
  ed.vertices.push_back(std::move(root));

  std::size_t begin = 0;
  for (std::uint32_t level = 1; level < k; ++level) {
    const std::size_t end = ed.vertices.size();
    for (std::size_t v = begin; v < end; ++v) {
      for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t b = 0; b < p; ++b) {
          EdificeVertex child;
          child.level = static_cast<int>(level + 1);
          child.parent = static_cast<std::int32_t>(v);
          child.polys = ed.vertices[v].polys;
          child.polys.emplace_back(static_cast<std::uint16_t>(a),
                                   static_cast<std::uint16_t>(b));
          child.set = vertex_set(p, k, child.polys, ed.universe_size);
          ed.vertices.push_back(std::move(child));
          ed.vertices[v].children.push_back(
              static_cast<std::uint32_t>(ed.vertices.size() - 1));
        }
      }
    }
    begin = end;
  }

  for (std::uint32_t v = 0; v < ed.vertices.size(); ++v)
    if (ed.vertices[v].level == static_cast<int>(k)) ed.leaves.push_back(v);
  return ed;
}

EdificeReport verify_edifice(const Edifice& ed, std::uint32_t s, std::uint32_t b,
                             std::uint32_t k, std::uint32_t d) {
  EdificeReport report;
  auto fail = [&report](int property, std::string detail) {
    report.ok = false;
    report.violations.push_back({property, std::move(detail)});
  };

  // Property I plus tree shape: root set is U, child sets nest, every
  // non-leaf has exactly d children, leaves sit at level k.
  if (ed.vertices.empty() ||
      ed.vertices[0].set.count() != ed.universe_size) {
    fail(1, "root set is not the whole universe");
  }
  for (std::uint32_t v = 0; v < ed.vertices.size(); ++v) {
    const auto& vert = ed.vertices[v];
    const bool leaf = vert.level == static_cast<int>(k);
    if (!leaf && vert.children.size() != d)
      fail(1, "vertex " + std::to_string(v) + " has " +
                  std::to_string(vert.children.size()) + " children, want " +
                  std::to_string(d));
    if (leaf && !vert.children.empty())
      fail(1, "leaf " + std::to_string(v) + " has children");
    if (vert.parent >= 0 &&
        !vert.set.is_subset_of(ed.vertices[vert.parent].set))
      fail(1, "vertex " + std::to_string(v) + " not nested in its parent");
  }

  // Property II: every leaf set has size exactly b.
  for (std::uint32_t u : ed.leaves) {
    if (ed.vertices[u].set.count() != b)
      fail(2, "leaf " + std::to_string(u) + " has size " +
                  std::to_string(ed.vertices[u].set.count()) + ", want " +
                  std::to_string(b));
  }

  // Property III: each leaf meets each non-ancestor set in <= s points.
  for (std::uint32_t u : ed.leaves) {
    Bitset ancestors(ed.vertices.size());
    for (std::int32_t a = static_cast<std::int32_t>(u); a >= 0;
         a = ed.vertices[a].parent)
      ancestors.set(static_cast<std::size_t>(a));
    for (std::uint32_t v = 0; v < ed.vertices.size(); ++v) {
      if (ancestors.test(v)) continue;
      const std::size_t inter = ed.vertices[u].set.count_and(ed.vertices[v].set);
      if (inter > s)
        fail(3, "leaf " + std::to_string(u) + " meets vertex " +
                    std::to_string(v) + " in " + std::to_string(inter) +
                    " points, cap " + std::to_string(s));
    }
  }
  return report;
}

HardInstance build_hard_instance(const Edifice& ed) {
  std::vector<GroundElement> pool;
  std::vector<StochasticItem> items;
  std::vector<std::uint32_t> vertex_item(ed.vertices.size());
  std::vector<std::uint32_t> element_item(ed.universe_size);

  for (std::uint32_t v = 0; v < ed.vertices.size(); ++v) {
    const auto& vert = ed.vertices[v];
    StochasticItem item;
    item.cost = 1;
    if (!vert.children.empty()) {
      for (std::uint32_t c : vert.children) {
        CoverMask mask = vert.set.minus(ed.vertices[c].set);
        pool.push_back(GroundElement{
            mask, "v" + std::to_string(v) + "-minus-v" + std::to_string(c)});
        item.support.push_back(
            SupportEntry{Rational(1, vert.children.size()),
                         static_cast<std::uint32_t>(pool.size() - 1)});
      }
    } else {
      const auto points = vert.set.to_indices();
      for (std::size_t e : points) {
        CoverMask mask = vert.set;
        mask.reset(e);
        pool.push_back(GroundElement{
            mask, "v" + std::to_string(v) + "-minus-e" + std::to_string(e)});
        item.support.push_back(
            SupportEntry{Rational(1, points.size()),
                         static_cast<std::uint32_t>(pool.size() - 1)});
      }
    }
    vertex_item[v] = static_cast<std::uint32_t>(items.size());
    items.push_back(std::move(item));
  }

  for (std::uint32_t e = 0; e < ed.universe_size; ++e) {
    CoverMask mask(ed.universe_size);
    mask.set(e);
    pool.push_back(GroundElement{mask, "e" + std::to_string(e)});
    StochasticItem item;
    item.cost = 1;
    item.support.push_back(
        SupportEntry{Rational(1), static_cast<std::uint32_t>(pool.size() - 1)});
    element_item[e] = static_cast<std::uint32_t>(items.size());
    items.push_back(std::move(item));
  }

  InstanceMetadata meta;
  meta.name = "edifice-hard-p" + std::to_string(ed.p) + "-k" + std::to_string(ed.k);
  meta.generator = "edifice-hard";
  nlohmann::ordered_json extra;
  extra["edifice"] = {{"p", ed.p}, {"k", ed.k}, {"s", ed.s}, {"b", ed.b}, {"d", ed.d}};
  meta.extra = extra.dump();

  Instance instance(ed.universe_size, std::move(pool), std::move(items),
                    std::move(meta));
  return HardInstance{ed, std::move(instance), std::move(vertex_item),
                      std::move(element_item)};
}

HardInstance hard_instance_from(const Instance& inst) {
  if (inst.metadata().generator != "edifice-hard" || inst.metadata().extra.empty())
    throw DomainError("instance is not from the edifice-hard family");
  const auto extra = nlohmann::ordered_json::parse(inst.metadata().extra);
  if (!extra.contains("edifice"))
    throw DomainError("instance lacks edifice metadata");
  const auto& je = extra.at("edifice");

  HardInstance rebuilt = build_hard_instance(
      build_edifice(je.at("p").get<std::uint32_t>(), je.at("k").get<std::uint32_t>()));

  const auto want = instance_to_json(rebuilt.instance).at("items");
  const auto got = instance_to_json(inst).at("items");
  if (want != got)
    throw DomainError("instance items do not match the edifice construction");
  return rebuilt;
}

std::vector<std::uint32_t> canonical_path(const HardInstance& hard,
                                          const Realization& real) {
  std::vector<std::uint32_t> path;
  std::uint32_t v = 0;
  path.push_back(v);
  for (std::uint32_t level = 1; level < hard.edifice.k; ++level) {
    const auto o = real.outcomes[hard.vertex_item[v]];
    if (o < 0) throw ContractError("canonical_path: undrawn vertex item");
    v = hard.edifice.vertices[v].children[static_cast<std::size_t>(o)];
    path.push_back(v);
  }
  return path;
}

std::int64_t canonical_path_trial(const HardInstance& hard,
                                  const Realization& real,
                                  std::vector<std::uint32_t>* picked) {
  const auto path = canonical_path(hard, real);
  std::int64_t cost = 0;
  for (std::uint32_t v : path) {
    const std::uint32_t item = hard.vertex_item[v];
    cost += hard.instance.item(item).cost;
    if (picked) picked->push_back(item);
  }
  // The leaf outcome misses exactly one element; its singleton finishes.
  const std::uint32_t leaf = path.back();
  const auto o = real.outcomes[hard.vertex_item[leaf]];
  if (o < 0) throw ContractError("canonical_path_trial: undrawn leaf item");
  const auto points = hard.edifice.vertices[leaf].set.to_indices();
  const std::size_t missing = points[static_cast<std::size_t>(o)];
  const std::uint32_t finisher = hard.element_item[missing];
  cost += hard.instance.item(finisher).cost;
  if (picked) picked->push_back(finisher);
  return cost;
}

}  // namespace ssc
