#include "sscover/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "sscover/union_dist.hpp"

namespace ssc {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t q = a / g;
  if (q > std::numeric_limits<std::uint64_t>::max() / b)
    throw CapacityError("support denominators too large to combine");
  return q * b;
}

}  // namespace

Instance::Instance(std::uint32_t universe_size, std::vector<GroundElement> pool,
                   std::vector<StochasticItem> items, InstanceMetadata metadata)
    : universe_size_(universe_size),
      pool_(std::move(pool)),
      items_(std::move(items)),
      metadata_(std::move(metadata)),
      coverage_(universe_size, pool_),
      full_union_(universe_size) {
  if (items_.empty()) throw InvariantError("instance has no items");

  std::set<std::string> labels;
  for (const auto& e : pool_) {
    if (e.covers.size() != universe_size_)
      throw InvariantError("ground element mask width mismatch");
    if (!labels.insert(e.label).second)
      throw InvariantError("duplicate ground element label: " + e.label);
  }

  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& item = items_[i];
    if (item.cost < 1) throw InvariantError("item cost must be >= 1");
    if (item.support.empty()) throw InvariantError("item with empty support");
    Rational total(0);
    for (const auto& entry : item.support) {
      if (entry.element >= pool_.size())
        throw InvariantError("support references unknown ground element");
      if (entry.prob <= 0) throw InvariantError("probabilities must be positive");
      total += entry.prob;
      full_union_ |= pool_[entry.element].covers;
    }
    if (total != 1)
      throw InvariantError("probabilities of item " + std::to_string(i) +
                           " sum to " + to_string(total) + ", expected 1");
    max_cost_ = std::max(max_cost_, item.cost);
    total_cost_ += item.cost;
  }
  q_ = static_cast<std::int64_t>(full_union_.count());

  sampling_.reserve(items_.size());
  for (const auto& item : items_) {
    SamplingTable table;
    std::uint64_t den = 1;
    for (const auto& entry : item.support)
      den = lcm_u64(den, to_int64(denominator(entry.prob)));
    table.den = den;
    std::uint64_t cum = 0;
    for (const auto& entry : item.support) {
      cum += to_int64(numerator(entry.prob) *
                      (BigInt(den) / denominator(entry.prob)));
      table.cum.push_back(cum);
    }
    if (cum != den) throw InvariantError("sampling table does not telescope");
    table.uniform = (den == item.support.size());
    sampling_.push_back(std::move(table));
  }
}

std::uint32_t Instance::sample_outcome(std::size_t item, RngStream& rng) const {
  const auto& table = sampling_[item];
  if (table.cum.size() == 1) return 0;
  std::uint64_t r = rng.below(table.den);
  if (table.uniform) return static_cast<std::uint32_t>(r);
  auto it = std::upper_bound(table.cum.begin(), table.cum.end(), r);
  return static_cast<std::uint32_t>(it - table.cum.begin());
}

std::uint64_t Instance::realization_space(std::uint64_t cap) const {
  std::uint64_t space = 1;
  for (const auto& item : items_) {
    if (space > cap / item.support.size()) return cap + 1;
    space *= item.support.size();
  }
  return space;
}

Realization sample_realization(const Instance& inst, RngStream& rng) {
  Realization real(inst.item_count());
  for (std::size_t i = 0; i < inst.item_count(); ++i)
    real.outcomes[i] = static_cast<std::int32_t>(inst.sample_outcome(i, rng));
  return real;
}

CoverMask covered_mask(const Instance& inst, const Realization& real,
                       const ItemSet& subset) {
  CoverMask mask(inst.universe_size());
  for (std::size_t i : subset.to_indices()) {
    if (real.outcomes[i] < 0)
      throw ContractError("covered_mask over an undrawn item");
    mask |= inst.cover_of(i, static_cast<std::size_t>(real.outcomes[i]));
  }
  return mask;
}

Rational expected_coverage_exact(const Instance& inst, const ItemSet& a,
                                 std::uint64_t budget) {
  std::uint64_t space = 1;
  for (std::size_t i : a.to_indices()) {
    std::uint64_t s = inst.item(i).support.size();
    if (space > budget / s)
      throw CapacityError(
          "exact enumeration budget exceeded; use Monte-Carlo mode");
    space *= s;
  }
  UnionDist dist(inst, CoverMask(inst.universe_size()), budget);
  for (std::size_t i : a.to_indices()) dist.extend(static_cast<std::uint32_t>(i));
  return dist.expected_count();
}

double expected_coverage_mc(const Instance& inst, const ItemSet& a,
                            std::size_t samples, RngStream& rng) {
  if (samples == 0) throw ContractError("expected_coverage_mc with 0 samples");
  auto indices = a.to_indices();
  double total = 0;
  CoverMask mask(inst.universe_size());
  for (std::size_t s = 0; s < samples; ++s) {
    mask.clear();
    for (std::size_t i : indices)
      mask |= inst.cover_of(i, inst.sample_outcome(i, rng));
    total += static_cast<double>(mask.count());
  }
  return total / static_cast<double>(samples);
}

FeasibilityReport check_always_feasible(const Instance& inst,
                                        std::uint64_t enum_budget,
                                        std::size_t sample_trials,
                                        RngStream& rng) {
  FeasibilityReport report;
  const std::uint64_t space = inst.realization_space(enum_budget);
  if (space <= enum_budget) {
    report.exhaustive = true;
    std::vector<std::uint32_t> outcome(inst.item_count(), 0);
    for (;;) {
      CoverMask mask(inst.universe_size());
      for (std::size_t i = 0; i < inst.item_count(); ++i)
        mask |= inst.cover_of(i, outcome[i]);
      ++report.checked;
      if (static_cast<std::int64_t>(mask.count()) != inst.q()) {
        report.feasible = false;
        return report;
      }
      std::size_t i = 0;
      while (i < inst.item_count() &&
             ++outcome[i] == inst.item(i).support.size()) {
        outcome[i++] = 0;
      }
      if (i == inst.item_count()) break;
    }
    return report;
  }
  for (std::size_t t = 0; t < sample_trials; ++t) {
    Realization real = sample_realization(inst, rng);
    CoverMask mask = covered_mask(inst, real, inst.all_items());
    ++report.checked;
    if (static_cast<std::int64_t>(mask.count()) != inst.q()) {
      report.feasible = false;
      return report;
    }
  }
  return report;
}

Instance add_completion_item(const Instance& inst) {
  auto pool = inst.pool();
  auto items = inst.items();

  GroundElement completion;
  completion.covers = inst.full_union();
  completion.label = "completion";
  int suffix = 0;
  auto taken = [&pool](const std::string& label) {
    return std::any_of(pool.begin(), pool.end(),
                       [&label](const auto& e) { return e.label == label; });
  };
  while (taken(completion.label))
    completion.label = "completion#" + std::to_string(++suffix);
  pool.push_back(completion);

  StochasticItem item;
  item.cost = 1 + inst.total_cost();
  item.support.push_back(
      SupportEntry{Rational(1), static_cast<std::uint32_t>(pool.size() - 1)});
  items.push_back(std::move(item));

  return Instance(inst.universe_size(), std::move(pool), std::move(items),
                  inst.metadata());
}

Instance gen_singleton_gap(std::uint32_t n) {
  if (n < 2) throw DomainError("gen_singleton_gap requires n >= 2");

  std::vector<GroundElement> pool;
  pool.reserve(2 * n);
  for (std::uint32_t e = 0; e < n; ++e) {
    CoverMask mask = CoverMask::full(n);
    mask.reset(e);
    pool.push_back(GroundElement{mask, "all-but-" + std::to_string(e)});
  }
  for (std::uint32_t e = 0; e < n; ++e) {
    CoverMask mask(n);
    mask.set(e);
    pool.push_back(GroundElement{mask, "point-" + std::to_string(e)});
  }

  std::vector<StochasticItem> items;
  StochasticItem big;
  big.cost = 1;
  for (std::uint32_t e = 0; e < n; ++e)
    big.support.push_back(SupportEntry{Rational(1, n), e});
  items.push_back(std::move(big));
  for (std::uint32_t e = 0; e < n; ++e) {
    StochasticItem single;
    single.cost = 1;
    single.support.push_back(SupportEntry{Rational(1), n + e});
    items.push_back(std::move(single));
  }

  InstanceMetadata meta;
  meta.name = "singleton-gap-" + std::to_string(n);
  meta.generator = "singleton-gap";
  return Instance(n, std::move(pool), std::move(items), std::move(meta));
}

Instance gen_random_setcover(const RandomSetCoverParams& params) {
  if (params.n == 0 || params.m == 0 || params.max_support == 0)
    throw DomainError("gen_random_setcover: parameters must be positive");
  if (!(params.density > 0.0) || params.density > 1.0)
    throw DomainError("gen_random_setcover: density must be in (0,1]");
  if (params.max_cost < 1)
    throw DomainError("gen_random_setcover: max_cost must be >= 1");

  RngStream rng = RngStream::from_path(params.seed, {rng_tag::kGenerator});

  std::vector<GroundElement> pool;
  std::vector<StochasticItem> items;
  for (std::uint32_t i = 0; i < params.m; ++i) {
    StochasticItem item;
    item.cost = 1 + static_cast<std::int64_t>(
                        rng.below(static_cast<std::uint64_t>(params.max_cost)));
    const std::uint32_t support_size =
        1 + static_cast<std::uint32_t>(rng.below(params.max_support));
    std::vector<std::uint64_t> weights(support_size);
    std::uint64_t weight_total = 0;
    for (auto& w : weights) {
      w = 1 + rng.below(8);
      weight_total += w;
    }
    for (std::uint32_t o = 0; o < support_size; ++o) {
      CoverMask mask(params.n);
      for (std::uint32_t e = 0; e < params.n; ++e)
        if (rng.next_double() < params.density) mask.set(e);
      pool.push_back(GroundElement{
          mask, "item" + std::to_string(i) + "-o" + std::to_string(o)});
      item.support.push_back(
          SupportEntry{Rational(weights[o], weight_total),
                       static_cast<std::uint32_t>(pool.size() - 1)});
    }
    items.push_back(std::move(item));
  }

  InstanceMetadata meta;
  meta.name = "random-setcover-" + std::to_string(params.seed);
  meta.generator = "random-setcover";
  meta.seed = params.seed;
  Instance base(params.n, std::move(pool), std::move(items), std::move(meta));
  return add_completion_item(base);
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["universe_size"] = inst.universe_size();
  auto items = nlohmann::ordered_json::array();
  for (const auto& item : inst.items()) {
    nlohmann::ordered_json ji;
    ji["cost"] = item.cost;
    auto support = nlohmann::ordered_json::array();
    for (const auto& entry : item.support) {
      nlohmann::ordered_json je;
      je["num"] = to_int64(numerator(entry.prob));
      je["den"] = to_int64(denominator(entry.prob));
      auto covers = nlohmann::ordered_json::array();
      for (std::size_t p : inst.pool()[entry.element].covers.to_indices())
        covers.push_back(p);
      je["covers"] = std::move(covers);
      support.push_back(std::move(je));
    }
    ji["support"] = std::move(support);
    items.push_back(std::move(ji));
  }
  j["items"] = std::move(items);

  nlohmann::ordered_json meta;
  meta["name"] = inst.metadata().name;
  meta["generator"] = inst.metadata().generator;
  meta["seed"] = inst.metadata().seed;
  if (!inst.metadata().extra.empty())
    meta["extra"] = nlohmann::ordered_json::parse(inst.metadata().extra);
  j["metadata"] = std::move(meta);
  return j;
}

Instance instance_from_json(const nlohmann::ordered_json& j) {
  if (!j.contains("universe_size") || !j.contains("items"))
    throw InvariantError("instance JSON missing required fields");
  const std::uint32_t n = j.at("universe_size").get<std::uint32_t>();

  std::vector<GroundElement> pool;
  std::vector<StochasticItem> items;
  std::size_t item_idx = 0;
  for (const auto& ji : j.at("items")) {
    StochasticItem item;
    item.cost = ji.at("cost").get<std::int64_t>();
    std::size_t outcome_idx = 0;
    for (const auto& je : ji.at("support")) {
      const std::int64_t num = je.at("num").get<std::int64_t>();
      const std::int64_t den = je.at("den").get<std::int64_t>();
      if (den == 0) throw InvariantError("probability with zero denominator");
      CoverMask mask(n);
      for (const auto& p : je.at("covers")) {
        const std::uint64_t idx = p.get<std::uint64_t>();
        if (idx >= n) throw InvariantError("cover point outside universe");
        mask.set(idx);
      }
      pool.push_back(GroundElement{
          mask, "item" + std::to_string(item_idx) + "-o" +
                    std::to_string(outcome_idx)});
      item.support.push_back(SupportEntry{
          make_rational(num, den), static_cast<std::uint32_t>(pool.size() - 1)});
      ++outcome_idx;
    }
    items.push_back(std::move(item));
    ++item_idx;
  }

  InstanceMetadata meta;
  if (j.contains("metadata")) {
    const auto& jm = j.at("metadata");
    meta.name = jm.value("name", "");
    meta.generator = jm.value("generator", "");
    meta.seed = jm.value("seed", std::uint64_t(0));
    if (jm.contains("extra")) meta.extra = jm.at("extra").dump();
  }
  return Instance(n, std::move(pool), std::move(items), std::move(meta));
}

std::string instance_to_string(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

Instance instance_from_string(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvariantError(std::string("instance JSON parse error: ") + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvariantError("cannot open for writing: " + path);
  out << instance_to_string(inst);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvariantError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

}  // namespace ssc
