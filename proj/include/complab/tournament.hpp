#pragma once

#include "complab/set_compression.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace complab {

/// A selector S on the t-subsets of a vertex set V with S(e) in e.
///
/// The selector is evaluated lazily on canonical (sorted) edges; results are
/// memoized when caching is enabled. A tournament must not be queried from
/// several threads at once while caching.
class HypergraphTournament {
 public:
  using Selector = std::function<Instance(std::span<const Instance> sorted_edge)>;

  HypergraphTournament(std::vector<Instance> vertices, std::size_t edge_size, Selector selector,
                       bool cache = true);

  const std::vector<Instance>& vertices() const { return vertices_; }
  std::size_t edge_size() const { return edge_size_; }

  /// S(e) for any presentation of e; throws if S(e) is not a member of e.
  Instance select(std::vector<Instance> edge) const;
  Instance select_sorted(std::span<const Instance> edge) const;

  /// True iff v is in g or S(g u {v}) = v.
  bool dominates(std::span<const Instance> g, Instance v) const;

  std::uint64_t selector_calls() const { return *calls_; }

 private:
  struct Cache;

  std::vector<Instance> vertices_;
  std::size_t edge_size_;
  Selector selector_;
  std::shared_ptr<Cache> cache_;
  std::shared_ptr<std::uint64_t> calls_;
};

/// S(e) = min { v in e : d(A(U_{2^e} \ {v}), A(U_{2^e} u {v})) <= delta }.
/// Throws InvariantViolation ("selector undefined") when no member qualifies.
HypergraphTournament selector_from_compression(const SetEncodedCompression& a,
                                               std::vector<Instance> vertices, std::size_t t,
                                               const Rational& delta);

/// A uniformly random selector, fixed by `seed` and order-independent.
HypergraphTournament random_tournament(std::vector<Instance> vertices, std::size_t t,
                                       std::uint64_t seed);

/// Least v = e_{jx} with d(A(X_e | v not in X_e), A(X_e | v in X_e)) <= delta,
/// where X_e samples one uniform element from each block.
Instance block_selector(const SetEncodedCompression& a, const std::vector<InstanceSet>& blocks,
                        const Rational& delta);

/// Splits a sorted edge of size t*k into t consecutive blocks of size k.
std::vector<InstanceSet> split_into_blocks(std::span<const Instance> sorted_edge,
                                           std::size_t block_size);

/// d(A(X_e | v not in X_e), A(X_e | v in X_e)) for v in one of the blocks.
Rational block_distance(const SetEncodedCompression& a, const std::vector<InstanceSet>& blocks,
                        Instance v);

/// Tournament on edges of size t * block_size whose selector is block_selector
/// applied to the canonical block split of each edge.
HypergraphTournament block_tournament(const SetEncodedCompression& a,
                                      std::vector<Instance> vertices, std::size_t t,
                                      std::size_t block_size, const Rational& delta);

struct DominatingSet {
  std::size_t edge_size = 0;
  /// Members are (t-1)-subsets of V.
  std::vector<InstanceSet> elements;
  /// trace[k] = number of undominated vertices after k elements were added.
  std::vector<std::size_t> trace;
};

struct GreedyOptions {
  /// Exhaustive search over the (t-1)-subsets of R when there are at most this many.
  std::uint64_t exhaustive_limit = 1'000'000;
  /// Seed for the randomized search beyond the exhaustive limit.
  std::uint64_t seed = 0;
};

/// Builds a dominating set by the averaging argument: each step adds a
/// (t-1)-subset of the undominated vertices R that dominates at least |R|/t of
/// them; when 0 < |R| < t a single superset of R finishes the construction.
DominatingSet greedy_dominating_set(const HypergraphTournament& s, GreedyOptions options = {});

struct DominationCheck {
  bool all_dominated = false;
  std::vector<Instance> undominated;
};

DominationCheck verify_domination(const HypergraphTournament& s, const DominatingSet& d,
                                  std::span<const Instance> vertices);

/// t * log2(max(|V|, 2)).
double dominating_set_size_bound(std::size_t t, std::size_t vertex_count);

/// trace[k] <= (1 - 1/t)^k |V| for every k.
bool trace_within_bound(const DominatingSet& d, std::size_t vertex_count);

}  // namespace complab
