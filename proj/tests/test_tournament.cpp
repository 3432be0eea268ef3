#include "complab/error.hpp"
#include "complab/tournament.hpp"
#include "support.hpp"

#include <algorithm>
#include <gtest/gtest.h>

namespace complab {
namespace {

std::vector<Instance> range_vertices(Instance count, Instance offset = 0) {
  std::vector<Instance> v(count);
  for (Instance i = 0; i < count; ++i) v[i] = offset + i;
  return v;
}

/// Direct domination check from the definition, independent of verify_domination.
bool dominated_by_definition(const HypergraphTournament& s, const DominatingSet& d, Instance v) {
  for (const auto& g : d.elements) {
    if (std::find(g.begin(), g.end(), v) != g.end()) return true;
    if (g.size() + 1 != s.edge_size()) continue;
    std::vector<Instance> e = g;
    e.push_back(v);
    if (s.select(e) == v) return true;
  }
  return false;
}

void expect_greedy_invariants(const HypergraphTournament& s, const DominatingSet& d) {
  const auto& vertices = s.vertices();
  for (Instance v : vertices) EXPECT_TRUE(dominated_by_definition(s, d, v)) << "vertex " << v;
  EXPECT_TRUE(verify_domination(s, d, vertices).all_dominated);
  EXPECT_LE(static_cast<double>(d.elements.size()), dominating_set_size_bound(s.edge_size(), vertices.size()));
  EXPECT_TRUE(trace_within_bound(d, vertices.size()));
  EXPECT_EQ(d.trace.front(), vertices.size());
  EXPECT_EQ(d.trace.back(), 0U);
  EXPECT_EQ(d.trace.size(), d.elements.size() + 1);
  for (const auto& g : d.elements) {
    EXPECT_LE(g.size(), s.edge_size() - 1);
    EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  }
}

TEST(Selector, IdealOrOnNoInstancesPicksTheMinimum) {
  const auto lang = ToyLanguage::from_yes_instances(3, {7});
  const auto a = ideal_or_compression(lang, 3);
  const auto s = selector_from_compression(a, range_vertices(7), 3, make_rational(1, 2));
  EXPECT_EQ(s.select({5, 2, 6}), 2U);
  EXPECT_EQ(s.select({6, 5, 4}), 4U);
}

TEST(Selector, YesInstanceIsNeverSelected) {
  const auto lang = ToyLanguage::from_yes_instances(3, {0});
  const auto a = ideal_or_compression(lang, 3);
  const auto s = selector_from_compression(a, range_vertices(8), 3, make_rational(9, 10));
  EXPECT_EQ(s.select({0, 3, 5}), 3U);
  EXPECT_EQ(s.select({0, 1, 2}), 1U);
}

TEST(Selector, SingletonEdge) {
  const auto a = ideal_or_compression(ToyLanguage::empty(2), 1);
  const auto s = selector_from_compression(a, range_vertices(4), 1, Rational(0));
  EXPECT_EQ(s.select({3}), 3U);
}

TEST(Selector, UndefinedWhenNoMemberQualifies) {
  // Every member is a yes-instance: each distance is 0 only when another yes is present,
  // so an edge of a single yes-instance has distance 1 > delta.
  const auto a = ideal_or_compression(ToyLanguage::from_yes_instances(2, {1}), 1);
  const auto s = selector_from_compression(a, range_vertices(4), 1, make_rational(1, 2));
  try {
    s.select({1});
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    EXPECT_NE(std::string(e.what()).find("selector undefined"), std::string::npos);
  }
}

TEST(Selector, RejectsMalformedEdges) {
  const auto s = random_tournament(range_vertices(6), 3, 1);
  EXPECT_THROW(s.select({1, 2}), DomainError);
  EXPECT_THROW(s.select({1, 2, 2}), DomainError);
  EXPECT_THROW(s.select({1, 2, 9}), DomainError);
}

TEST(Selector, PlantedYesNeverSelectedUnderNoisyOr) {
  // delta < Delta = 1 - e_s - e_c keeps every yes-instance out of the selection.
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const auto lang = random_language(4, rng.next());
    const auto a = noisy_or_compression(lang, 3, make_rational(1, 8), make_rational(1, 8), 3);
    const auto s = selector_from_compression(a, range_vertices(16), 3, make_rational(1, 2));
    for (int q = 0; q < 20; ++q) {
      std::vector<Instance> e;
      while (e.size() < 3) {
        const auto x = static_cast<Instance>(rng.below(16));
        if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
      }
      // Plant exactly one yes-instance among no-instances.
      const auto yes = std::count_if(e.begin(), e.end(), [&](Instance x) { return lang.contains(x); });
      if (yes != 1) continue;
      EXPECT_FALSE(lang.contains(s.select(e)));
    }
  }
}

TEST(RandomTournament, OrderIndependentAndMember) {
  Rng rng(32);
  const auto s = random_tournament(range_vertices(12), 4, 77);
  for (int q = 0; q < 100; ++q) {
    std::vector<Instance> e;
    while (e.size() < 4) {
      const auto x = static_cast<Instance>(rng.below(12));
      if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
    }
    const Instance pick = s.select(e);
    EXPECT_NE(std::find(e.begin(), e.end(), pick), e.end());
    std::reverse(e.begin(), e.end());
    EXPECT_EQ(s.select(e), pick);
    std::rotate(e.begin(), e.begin() + 1, e.end());
    EXPECT_EQ(s.select(e), pick);
  }
}

TEST(Greedy, SingleVertex) {
  const auto s = random_tournament({5}, 2, 1);
  const auto d = greedy_dominating_set(s);
  ASSERT_EQ(d.elements.size(), 1U);
  EXPECT_EQ(d.elements[0], InstanceSet{5});
  expect_greedy_invariants(s, d);
}

TEST(Greedy, OrdinaryTournamentOnEightVertices) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = random_tournament(range_vertices(8), 2, seed);
    const auto d = greedy_dominating_set(s);
    EXPECT_LE(d.elements.size(), 6U);
    expect_greedy_invariants(s, d);
  }
}

TEST(Greedy, IdealOrTournamentIsDominatedAtOnce) {
  const auto a = ideal_or_compression(ToyLanguage::empty(3), 3);
  const auto s = selector_from_compression(a, range_vertices(8), 3, Rational(0));
  const auto d = greedy_dominating_set(s);
  // g = {6, 7} dominates every vertex below 6; the finishing step is not needed.
  EXPECT_EQ(d.elements.front(), (InstanceSet{6, 7}));
  EXPECT_EQ(d.elements.size(), 1U);
  expect_greedy_invariants(s, d);
}

TEST(Greedy, RandomTournamentsAcrossShapes) {
  Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = static_cast<std::size_t>(1 + rng.below(5));
    const auto n = static_cast<Instance>(1 + rng.below(30));
    const auto s = random_tournament(range_vertices(n, 100), t, rng.next());
    expect_greedy_invariants(s, greedy_dominating_set(s));
  }
}

TEST(Greedy, SampledSearchAlsoSatisfiesInvariants) {
  Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_tournament(range_vertices(40), 4, rng.next());
    GreedyOptions options;
    options.exhaustive_limit = 0;
    options.seed = rng.next();
    expect_greedy_invariants(s, greedy_dominating_set(s, options));
  }
}

TEST(Greedy, DeterministicForFixedInputs) {
  const auto s = random_tournament(range_vertices(20), 3, 5);
  const auto a = greedy_dominating_set(s);
  const auto b = greedy_dominating_set(random_tournament(range_vertices(20), 3, 5));
  EXPECT_EQ(a.elements, b.elements);
  EXPECT_EQ(a.trace, b.trace);
}

TEST(VerifyDomination, EmptySetDominatesNothing) {
  const auto s = random_tournament(range_vertices(5), 2, 3);
  const auto check = verify_domination(s, DominatingSet{2, {}, {5}}, s.vertices());
  EXPECT_FALSE(check.all_dominated);
  EXPECT_EQ(check.undominated, s.vertices());
}

TEST(VerifyDomination, DetectsARemovedElement) {
  Rng rng(35);
  int detected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = random_tournament(range_vertices(16), 3, rng.next());
    auto d = greedy_dominating_set(s);
    const std::size_t drop = rng.below(d.elements.size());
    const InstanceSet removed = d.elements[drop];
    d.elements.erase(d.elements.begin() + static_cast<long>(drop));
    const auto check = verify_domination(s, d, s.vertices());
    for (Instance v : s.vertices()) {
      const bool expected = dominated_by_definition(s, d, v);
      const bool reported = std::find(check.undominated.begin(), check.undominated.end(), v) == check.undominated.end();
      EXPECT_EQ(expected, reported);
    }
    // Members of the removed element are dominated only through other elements.
    for (Instance v : removed) {
      if (!dominated_by_definition(s, d, v)) {
        ++detected;
        EXPECT_FALSE(check.all_dominated);
      }
    }
  }
  EXPECT_GT(detected, 0);
}

TEST(Bounds, SizeAndTrace) {
  EXPECT_DOUBLE_EQ(dominating_set_size_bound(3, 8), 9.0);
  EXPECT_DOUBLE_EQ(dominating_set_size_bound(2, 1), 2.0);
  EXPECT_TRUE(trace_within_bound(DominatingSet{2, {}, {8, 4, 2, 1, 0}}, 8));
  EXPECT_FALSE(trace_within_bound(DominatingSet{2, {}, {8, 5}}, 8));
}

TEST(Blocks, SplitIntoConsecutiveChunks) {
  const std::vector<Instance> e{1, 2, 4, 8, 9, 12};
  const auto blocks = split_into_blocks(e, 2);
  EXPECT_EQ(blocks, (std::vector<InstanceSet>{{1, 2}, {4, 8}, {9, 12}}));
  EXPECT_THROW(split_into_blocks(e, 4), DomainError);
}

TEST(BlockSelector, AllNoBlocksPickTheLeast) {
  const auto a = ideal_or_compression(ToyLanguage::from_yes_instances(3, {7}), 2);
  EXPECT_EQ(block_selector(a, {{2, 5}, {3, 6}}, make_rational(1, 2)), 2U);
  EXPECT_EQ(block_selector(a, {{1, 4}}, Rational(0)), 1U);
  EXPECT_THROW(block_selector(a, {{4, 1}}, Rational(0)), DomainError);
}

TEST(BlockSelector, YesElementDisqualified) {
  const auto a = ideal_or_compression(ToyLanguage::from_yes_instances(3, {0}), 2);
  const std::vector<InstanceSet> blocks{{0, 5}, {3, 6}};
  EXPECT_EQ(block_distance(a, blocks, 0), Rational(1));
  EXPECT_NE(block_selector(a, blocks, make_rational(1, 2)), 0U);
}

TEST(BlockSelector, DistanceMatchesDirectEnumeration) {
  // d(A(X_e | v out), A(X_e | v in)) by listing the |Sigma|^t choices directly.
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto lang = random_language(4, rng.next());
    const auto a = noisy_or_compression(lang, 3, dyadic(rng.below(3), 2), dyadic(rng.below(3), 2), 2);
    const std::vector<InstanceSet> blocks{{0, 3, 9}, {1, 4, 10}, {2, 7, 15}};
    const Instance v = blocks[rng.below(3)][rng.below(3)];
    DistributionBuilder<Output> in;
    DistributionBuilder<Output> out;
    std::uint64_t in_count = 0;
    std::uint64_t out_count = 0;
    for (Symbol a0 = 0; a0 < 3; ++a0) {
      for (Symbol a1 = 0; a1 < 3; ++a1) {
        for (Symbol a2 = 0; a2 < 3; ++a2) {
          std::vector<Instance> set{blocks[0][a0], blocks[1][a1], blocks[2][a2]};
          const bool has_v = std::find(set.begin(), set.end(), v) != set.end();
          (has_v ? in_count : out_count) += 4;
        }
      }
    }
    for (Symbol a0 = 0; a0 < 3; ++a0) {
      for (Symbol a1 = 0; a1 < 3; ++a1) {
        for (Symbol a2 = 0; a2 < 3; ++a2) {
          std::vector<Instance> set{blocks[0][a0], blocks[1][a1], blocks[2][a2]};
          const bool has_v = std::find(set.begin(), set.end(), v) != set.end();
          for (std::uint64_t c = 0; c < 4; ++c) {
            const Output y = a.evaluate(set, c);
            if (has_v) {
              in.add(y, make_rational(1, static_cast<std::int64_t>(in_count)));
            } else {
              out.add(y, make_rational(1, static_cast<std::int64_t>(out_count)));
            }
          }
        }
      }
    }
    EXPECT_EQ(block_distance(a, blocks, v), testing::sd_by_events(std::move(out).build(), std::move(in).build()));
  }
}

TEST(BlockTournament, SelectsFromTheEdge) {
  const auto a = ideal_or_compression(ToyLanguage::from_yes_instances(4, {3}), 2);
  const auto s = block_tournament(a, range_vertices(16), 2, 2, make_rational(1, 2));
  EXPECT_EQ(s.edge_size(), 4U);
  // Blocks are {1, 3} and {9, 12}. Removing 1 forces the yes-instance 3 in, so
  // both members of the first block sit at distance 1.
  EXPECT_EQ(s.select({9, 3, 1, 12}), 9U);
  EXPECT_EQ(block_distance(a, {{1, 3}, {9, 12}}, 1), Rational(1));
  EXPECT_EQ(s.select({3, 0, 5, 6}), 5U);
  EXPECT_EQ(s.select({0, 1, 2, 4}), 0U);
}

}  // namespace
}  // namespace complab
