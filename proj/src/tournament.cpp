#include "complab/tournament.hpp"

#include "complab/budget.hpp"
#include "complab/error.hpp"
#include "complab/random.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace complab {

namespace {

// Past this many memoized edges the cache is dropped and refilled.
constexpr std::size_t kCacheLimit = std::size_t{1} << 20;

std::string edge_to_string(std::span<const Instance> e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "}";
}

}  // namespace

struct HypergraphTournament::Cache {
  std::map<InstanceSet, Instance> selected;
};

HypergraphTournament::HypergraphTournament(std::vector<Instance> vertices, std::size_t edge_size,
                                           Selector selector, bool cache)
    : vertices_(canonical_set(std::move(vertices))),
      edge_size_(edge_size),
      selector_(std::move(selector)),
      cache_(cache ? std::make_shared<Cache>() : nullptr),
      calls_(std::make_shared<std::uint64_t>(0)) {
  if (edge_size_ == 0) throw DomainError("edge size must be positive");
  if (!selector_) throw DomainError("tournament needs a selector");
}

Instance HypergraphTournament::select(std::vector<Instance> edge) const {
  const InstanceSet sorted = canonical_set(std::move(edge));
  return select_sorted(sorted);
}

Instance HypergraphTournament::select_sorted(std::span<const Instance> edge) const {
  if (edge.size() != edge_size_) throw DomainError("edge has the wrong size");
  for (std::size_t i = 0; i < edge.size(); ++i) {
    if (i > 0 && edge[i - 1] >= edge[i]) throw DomainError("edge is not canonical");
    if (!std::binary_search(vertices_.begin(), vertices_.end(), edge[i])) {
      throw DomainError("edge member " + std::to_string(edge[i]) + " is not a vertex");
    }
  }
  if (cache_) {
    auto it = cache_->selected.find(InstanceSet(edge.begin(), edge.end()));
    if (it != cache_->selected.end()) return it->second;
  }
  ++*calls_;
  const Instance v = selector_(edge);
  if (!std::binary_search(edge.begin(), edge.end(), v)) {
    throw InvariantViolation("selector returned " + std::to_string(v) + " outside the edge " +
                             edge_to_string(edge));
  }
  if (cache_) {
    if (cache_->selected.size() >= kCacheLimit) cache_->selected.clear();
    cache_->selected.emplace(InstanceSet(edge.begin(), edge.end()), v);
  }
  return v;
}

bool HypergraphTournament::dominates(std::span<const Instance> g, Instance v) const {
  if (std::find(g.begin(), g.end(), v) != g.end()) return true;
  if (g.size() + 1 != edge_size_) return false;
  InstanceSet e(g.begin(), g.end());
  e.insert(std::upper_bound(e.begin(), e.end(), v), v);
  return select_sorted(e) == v;
}

HypergraphTournament selector_from_compression(const SetEncodedCompression& a,
                                               std::vector<Instance> vertices, std::size_t t,
                                               const Rational& delta) {
  if (t > a.arity()) throw DomainError("edge size exceeds the compression's arity");
  return HypergraphTournament(
      std::move(vertices), t, [a, delta](std::span<const Instance> e) -> Instance {
        for (Instance v : e) {
          if (selector_distance(a, e, v) <= delta) return v;
        }
        throw InvariantViolation("selector undefined on edge " + edge_to_string(e));
      });
}

HypergraphTournament random_tournament(std::vector<Instance> vertices, std::size_t t,
                                       std::uint64_t seed) {
  return HypergraphTournament(
      std::move(vertices), t,
      [seed](std::span<const Instance> e) -> Instance {
        std::uint64_t h = seed;
        for (Instance x : e) h = mix_seed(h, x);
        return e[h % e.size()];
      },
      false);
}

std::vector<InstanceSet> split_into_blocks(std::span<const Instance> sorted_edge,
                                           std::size_t block_size) {
  if (block_size == 0 || sorted_edge.empty() || sorted_edge.size() % block_size != 0) {
    throw DomainError("edge size is not a positive multiple of the block size");
  }
  std::vector<InstanceSet> blocks;
  for (std::size_t i = 0; i < sorted_edge.size(); i += block_size) {
    blocks.emplace_back(sorted_edge.begin() + static_cast<std::ptrdiff_t>(i),
                        sorted_edge.begin() + static_cast<std::ptrdiff_t>(i + block_size));
  }
  return blocks;
}

namespace {

/// (block j, position x) of v.
std::pair<std::size_t, Symbol> locate(const std::vector<InstanceSet>& blocks, Instance v) {
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    auto it = std::lower_bound(blocks[j].begin(), blocks[j].end(), v);
    if (it != blocks[j].end() && *it == v) {
      return {j, static_cast<Symbol>(it - blocks[j].begin())};
    }
  }
  throw DomainError("vertex " + std::to_string(v) + " is not in any block");
}

Rational block_distance_on(const CompressiveMap& f, const ProductDistribution<Rational>& x,
                           std::size_t j, Symbol s) {
  return statistical_distance(
      output_distribution(f, x.condition(j, CoordinateConstraint::not_equal(s))),
      output_distribution(f, x.condition(j, CoordinateConstraint::equal(s))));
}

void check_blocks(const std::vector<InstanceSet>& blocks) {
  if (blocks.empty()) throw DomainError("no blocks");
  for (const auto& b : blocks) {
    if (b.size() < 2) throw DomainError("blocks need at least two elements");
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (b[i - 1] >= b[i]) throw DomainError("blocks must be sorted and distinct");
    }
  }
}

}  // namespace

Rational block_distance(const SetEncodedCompression& a, const std::vector<InstanceSet>& blocks,
                        Instance v) {
  check_blocks(blocks);
  const auto [j, s] = locate(blocks, v);
  const CompressiveMap f = block_encoding(a, blocks);
  const auto x = ProductDistribution<Rational>::uniform(f.alphabet_size(), f.arity());
  return block_distance_on(f, x, j, s);
}

Instance block_selector(const SetEncodedCompression& a, const std::vector<InstanceSet>& blocks,
                        const Rational& delta) {
  check_blocks(blocks);
  const CompressiveMap f = block_encoding(a, blocks);
  const auto x = ProductDistribution<Rational>::uniform(f.alphabet_size(), f.arity());
  std::vector<Instance> members;
  for (const auto& b : blocks) members.insert(members.end(), b.begin(), b.end());
  std::sort(members.begin(), members.end());
  for (Instance v : members) {
    const auto [j, s] = locate(blocks, v);
    if (block_distance_on(f, x, j, s) <= delta) return v;
  }
  throw InvariantViolation("selector undefined on block edge " + edge_to_string(members));
}

HypergraphTournament block_tournament(const SetEncodedCompression& a,
                                      std::vector<Instance> vertices, std::size_t t,
                                      std::size_t block_size, const Rational& delta) {
  if (t == 0 || block_size < 2) throw DomainError("block tournaments need t >= 1 and |Sigma| >= 2");
  if (t > a.arity()) throw DomainError("block count exceeds the compression's arity");
  return HypergraphTournament(std::move(vertices), t * block_size,
                              [a, delta, block_size](std::span<const Instance> e) -> Instance {
                                return block_selector(a, split_into_blocks(e, block_size), delta);
                              });
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t num = n - k + i;
    if (c > UINT64_MAX / num) return UINT64_MAX;
    c = c * num / i;
  }
  return c;
}

/// Members of R dominated by g.
std::vector<Instance> dominated_by(const HypergraphTournament& s, const InstanceSet& g,
                                   const std::vector<Instance>& remaining) {
  std::vector<Instance> out;
  for (Instance v : remaining) {
    if (s.dominates(g, v)) out.push_back(v);
  }
  return out;
}

struct Candidate {
  InstanceSet g;
  std::vector<Instance> dominated;
};

Candidate exhaustive_step(const HypergraphTournament& s, const std::vector<Instance>& remaining,
                          std::size_t k) {
  Candidate best;
  bool have = false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  InstanceSet g(k);
  const std::size_t n = remaining.size();
  while (true) {
    for (std::size_t i = 0; i < k; ++i) g[i] = remaining[idx[i]];
    auto dom = dominated_by(s, g, remaining);
    if (!have || dom.size() > best.dominated.size()) {
      best = Candidate{g, std::move(dom)};
      have = true;
    }
    // Next k-combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

Candidate sampled_step(const HypergraphTournament& s, const std::vector<Instance>& remaining,
                       std::size_t k, std::size_t t, Rng& rng) {
  const std::uint64_t cap = 10 * t * remaining.size();
  std::vector<std::size_t> pool(remaining.size());
  Candidate best;
  for (std::uint64_t sample = 0; sample < cap; ++sample) {
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    InstanceSet g;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      g.push_back(remaining[pool[i]]);
    }
    std::sort(g.begin(), g.end());
    auto dom = dominated_by(s, g, remaining);
    if (t * dom.size() >= remaining.size()) return Candidate{std::move(g), std::move(dom)};
    if (dom.size() > best.dominated.size() || best.g.empty()) best = Candidate{std::move(g), std::move(dom)};
  }
  throw InvariantViolation("randomized dominating-set search failed; best fraction " +
                           std::to_string(best.dominated.size()) + "/" +
                           std::to_string(remaining.size()));
}

}  // namespace

DominatingSet greedy_dominating_set(const HypergraphTournament& s, GreedyOptions options) {
  const auto& vertices = s.vertices();
  const std::size_t t = s.edge_size();
  DominatingSet out;
  out.edge_size = t;
  std::vector<Instance> remaining = vertices;
  out.trace.push_back(remaining.size());
  Rng rng(mix_seed(options.seed, 0x646f6d));
  while (!remaining.empty()) {
    if (remaining.size() < t) {
      // Finish with one (t-1)-superset of R (or all of V when |V| < t - 1).
      InstanceSet g = remaining;
      for (Instance v : vertices) {
        if (g.size() >= t - 1) break;
        if (!std::binary_search(remaining.begin(), remaining.end(), v)) g.push_back(v);
      }
      std::sort(g.begin(), g.end());
      out.elements.push_back(std::move(g));
      remaining.clear();
      out.trace.push_back(0);
      break;
    }
    const std::size_t k = t - 1;
    Candidate step = binomial(remaining.size(), k) <= options.exhaustive_limit
                         ? exhaustive_step(s, remaining, k)
                         : sampled_step(s, remaining, k, t, rng);
    if (t * step.dominated.size() < remaining.size()) {
      throw InvariantViolation("no (t-1)-subset dominates a 1/t fraction of the remaining vertices");
    }
    std::vector<Instance> rest;
    std::set_difference(remaining.begin(), remaining.end(), step.dominated.begin(),
                        step.dominated.end(), std::back_inserter(rest));
    remaining = std::move(rest);
    out.elements.push_back(std::move(step.g));
    out.trace.push_back(remaining.size());
  }
  return out;
}

DominationCheck verify_domination(const HypergraphTournament& s, const DominatingSet& d,
                                  std::span<const Instance> vertices) {
  DominationCheck out;
  for (Instance v : vertices) {
    bool dominated = false;
    for (const auto& g : d.elements) {
      if (s.dominates(g, v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.undominated.push_back(v);
  }
  out.all_dominated = out.undominated.empty();
  return out;
}

double dominating_set_size_bound(std::size_t t, std::size_t vertex_count) {
  return static_cast<double>(t) * std::log2(static_cast<double>(std::max<std::size_t>(vertex_count, 2)));
}

bool trace_within_bound(const DominatingSet& d, std::size_t vertex_count) {
  if (d.edge_size == 0) return false;
  const double shrink = 1.0 - 1.0 / static_cast<double>(d.edge_size);
  for (std::size_t k = 0; k < d.trace.size(); ++k) {
    const double bound = std::pow(shrink, static_cast<double>(k)) * static_cast<double>(vertex_count);
    if (static_cast<double>(d.trace[k]) > bound + 1e-9) return false;
  }
  return true;
}

}  // namespace complab
