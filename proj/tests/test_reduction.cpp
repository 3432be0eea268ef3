#include "complab/error.hpp"
#include "complab/reduction.hpp"
#include "support.hpp"

#include <algorithm>
#include <gtest/gtest.h>

namespace complab {
namespace {

Thresholds gap(Rational big, Rational small) { return Thresholds{std::move(big), std::move(small)}; }

SdQuery query_at_distance(const Rational& d, const Thresholds& th) {
  return SdQuery(bernoulli(Rational(0)), bernoulli(d), th);
}

TEST(Oracle, PromiseSides) {
  const auto th = gap(Rational(1), make_rational(1, 2));
  EXPECT_TRUE(exact_sd_oracle(query_at_distance(Rational(1), th)));
  EXPECT_FALSE(exact_sd_oracle(query_at_distance(Rational(0), th)));
  EXPECT_FALSE(exact_sd_oracle(query_at_distance(Rational(0), gap(make_rational(1, 10), Rational(0)))));
}

TEST(Oracle, TieAtMidpointGoesUp) {
  const auto th = gap(Rational(1), make_rational(1, 2));
  EXPECT_TRUE(exact_sd_oracle(query_at_distance(make_rational(3, 4), th)));
  EXPECT_FALSE(exact_sd_oracle(query_at_distance(make_rational(3, 4) - make_rational(1, 1000), th)));
}

TEST(Oracle, PositionMustBeInUnitInterval) {
  EXPECT_THROW(SdOracle(Rational(0)), DomainError);
  EXPECT_THROW(SdOracle(make_rational(3, 2)), DomainError);
  EXPECT_NO_THROW(SdOracle(Rational(1)));
}

TEST(Query, PromiseTags) {
  const auto th = gap(make_rational(3, 4), make_rational(1, 4));
  EXPECT_EQ(query_at_distance(make_rational(3, 4), th).tag(), PromiseTag::yes);
  EXPECT_EQ(query_at_distance(make_rational(1, 4), th).tag(), PromiseTag::no);
  EXPECT_EQ(query_at_distance(make_rational(1, 2), th).tag(), PromiseTag::gap);
}

TEST(Thresholds, EmptyGapRejected) {
  try {
    gap(make_rational(1, 2), make_rational(1, 2)).validate();
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("empty promise gap"), std::string::npos);
  }
  EXPECT_THROW(gap(make_rational(3, 2), Rational(0)).validate(), DomainError);
  EXPECT_THROW(gap(Rational(1), make_rational(-1, 2)).validate(), DomainError);
  EXPECT_THROW(query_at_distance(Rational(1), gap(Rational(0), Rational(0))), DomainError);
}

TEST(Advice, FullVWhenFewNoInstances) {
  const auto lang = ToyLanguage::from_yes_instances(2, {0, 3});
  const auto a = ideal_or_compression(lang, 2);
  const auto advice = build_advice(lang, a, 2, default_small_delta(a));
  EXPECT_EQ(advice.mode, AdviceMode::full_v);
  EXPECT_EQ(advice.no_instances, (std::vector<Instance>{1, 2}));
  const auto th = gap(Rational(1), default_small_delta(a));
  EXPECT_FALSE(decide({1, 2}, advice, a, th).accept);
  EXPECT_TRUE(decide({1, 2}, advice, a, th).rejected_by_membership);
  EXPECT_TRUE(decide({0, 2}, advice, a, th).accept);
}

TEST(Advice, SingleYesLanguageUsesDominatingSet) {
  const auto lang = builtin_language("single-yes", 3);
  const auto a = ideal_or_compression(lang, 3);
  const auto delta = default_small_delta(a);
  const auto advice = build_advice(lang, a, 3, delta);
  ASSERT_EQ(advice.mode, AdviceMode::dominating_set);
  const auto s = selector_from_compression(a, lang.no_instances(), 3, delta);
  EXPECT_TRUE(verify_domination(s, advice.dominating_set, lang.no_instances()).all_dominated);
  for (const auto& g : advice.dominating_set.elements) {
    for (Instance x : g) EXPECT_FALSE(lang.contains(x));
  }
}

TEST(Advice, EmptyLanguageOverAllStrings) {
  const auto lang = ToyLanguage::empty(4);
  const auto a = ideal_or_compression(lang, 3);
  const auto advice = build_advice(lang, a, 3, default_small_delta(a));
  EXPECT_EQ(advice.mode, AdviceMode::dominating_set);
  EXPECT_LE(advice.size(), 3U * 4U);
}

TEST(Advice, RejectsMismatchedShapes) {
  const auto lang = ToyLanguage::empty(3);
  EXPECT_THROW(build_advice(lang, ideal_or_compression(ToyLanguage::empty(4), 3), 3, Rational(0)), DomainError);
  EXPECT_THROW(build_advice(lang, ideal_or_compression(lang, 2), 3, Rational(0)), DomainError);
  EXPECT_THROW(build_advice(lang, ideal_or_compression(lang, 2), 0, Rational(0)), DomainError);
}

TEST(Decide, SingleYesExamples) {
  const auto lang = builtin_language("single-yes", 3);
  const auto a = ideal_or_compression(lang, 3);
  const Thresholds th{default_big_delta(a), default_small_delta(a)};
  const auto advice = build_advice(lang, a, 3, th.small_delta);

  const auto yes = decide(BitString::parse("111"), advice, a, th);
  EXPECT_TRUE(yes.accept);
  ASSERT_EQ(yes.distances.size(), advice.size());
  for (const auto& d : yes.distances) EXPECT_EQ(d, Rational(1));

  const auto no = decide(BitString::parse("000"), advice, a, th);
  EXPECT_FALSE(no.accept);

  const Instance member = advice.dominating_set.elements.front().front();
  const auto inside = decide({member, 3}, advice, a, th);
  EXPECT_TRUE(inside.rejected_by_membership);
  EXPECT_TRUE(inside.distances.empty());
  EXPECT_TRUE(plan_queries({member, 3}, advice, a, th).queries.empty());

  EXPECT_THROW(decide(BitString::parse("11"), advice, a, th), DomainError);
  EXPECT_THROW(decide_tlogt(BitString::parse("111"), advice, a, th), DomainError);
}

struct Corpus {
  ToyLanguage lang;
  SetEncodedCompression a;
  Thresholds th;
  Advice advice;
};

/// Noisy OR with e_s + e_c = 1/4 < 1 - sqrt(2 ln 2 / t) for t = 4.
Corpus noisy_corpus(std::uint64_t seed, unsigned n) {
  auto lang = random_language(n, seed);
  auto a = noisy_or_compression(lang, 4, make_rational(1, 8), make_rational(1, 8), 3);
  Thresholds th{default_big_delta(a), default_small_delta(a)};
  auto advice = build_advice(lang, a, 4, th.small_delta);
  return Corpus{std::move(lang), std::move(a), std::move(th), std::move(advice)};
}

TEST(Properties, YesSensitivityOverBuiltAdvice) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto c = noisy_corpus(seed, 4);
    if (c.advice.mode != AdviceMode::dominating_set) continue;
    for (Instance v : c.lang.yes_instances()) {
      for (const auto& g : c.advice.dominating_set.elements) {
        InstanceSet e = g;
        e.push_back(v);
        std::sort(e.begin(), e.end());
        const auto d = statistical_distance(
            output_distribution(c.a, subset_distribution(g, SubsetMode::all)),
            output_distribution(c.a, subset_distribution(e, SubsetMode::with, v)));
        EXPECT_GE(d, c.th.big_delta);
      }
    }
  }
}

TEST(Properties, DominationSoundness) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto c = noisy_corpus(seed, 4);
    if (c.advice.mode != AdviceMode::dominating_set) continue;
    for (Instance v : c.lang.no_instances()) {
      const auto d = decide({v, 4}, c.advice, c.a, c.th);
      if (d.rejected_by_membership) continue;
      EXPECT_TRUE(std::any_of(d.distances.begin(), d.distances.end(),
                              [&](const Rational& x) { return x <= c.th.small_delta; }))
          << "no-instance " << v;
    }
  }
}

TEST(Properties, DecisionMatchesMembership) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto c = noisy_corpus(seed, 4);
    for (Instance x = 0; x < 16; ++x) EXPECT_EQ(decide({x, 4}, c.advice, c.a, c.th).accept, c.lang.contains(x));
  }
}

TEST(Properties, OraclePositionDoesNotChangeVerdicts) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto c = noisy_corpus(seed, 4);
    for (Instance x = 0; x < 16; ++x) {
      const bool reference = decide({x, 4}, c.advice, c.a, c.th).accept;
      for (const auto& pos : {make_rational(1, 100), make_rational(1, 3), Rational(1)}) {
        EXPECT_EQ(decide({x, 4}, c.advice, c.a, c.th, SdOracle(pos)).accept, reference);
      }
    }
  }
}

TEST(Properties, QueriesDoNotDependOnTheOracle) {
  const auto c = noisy_corpus(3, 4);
  for (Instance x = 0; x < 16; ++x) {
    const auto plan = plan_queries({x, 4}, c.advice, c.a, c.th);
    const auto low = decide({x, 4}, c.advice, c.a, c.th, SdOracle(make_rational(1, 100)));
    const auto high = decide({x, 4}, c.advice, c.a, c.th, SdOracle(Rational(1)));
    EXPECT_EQ(low.distances, high.distances);
    ASSERT_EQ(plan.queries.size(), low.distances.size());
    for (std::size_t i = 0; i < plan.queries.size(); ++i) EXPECT_EQ(plan.queries[i].distance(), low.distances[i]);
  }
}

TEST(Audit, IdealOrAgreesOnEveryLanguageOfLengthThree) {
  for (std::uint64_t code = 0; code < 256; ++code) {
    const auto lang = language_from_code(3, code);
    const auto a = ideal_or_compression(lang, 3);
    const auto report = audit_language(lang, a, 3, {default_big_delta(a), default_small_delta(a)});
    EXPECT_EQ(report.agreement(), 1.0) << "code " << code;
    EXPECT_EQ(report.inputs, 8U);
  }
}

TEST(Audit, EmptyGapFailsBeforeAnyDecision) {
  const auto lang = ToyLanguage::empty(3);
  const auto a = ideal_or_compression(lang, 3);
  EXPECT_THROW(audit_language(lang, a, 3, gap(make_rational(1, 2), make_rational(1, 2))), DomainError);
}

TEST(Audit, Limits) {
  const auto lang = ToyLanguage::empty(11);
  const auto a = ideal_or_compression(lang, 3);
  EXPECT_THROW(audit_language(lang, a, 3, gap(Rational(1), Rational(0))), BudgetExceeded);
  const auto small = ToyLanguage::empty(3);
  const auto b = ideal_or_compression(small, 8);
  AuditOptions options;
  options.reduction = ReductionMode::tlogt;
  options.alphabet_size = 2;
  EXPECT_THROW(audit_language(small, b, 7, gap(Rational(1), Rational(0)), options), BudgetExceeded);
}

TEST(Tlogt, PlantedYesIsAccepted) {
  const auto lang = ToyLanguage::from_yes_instances(3, {5});
  const auto a = ideal_or_compression(lang, 2);
  const Thresholds th{Rational(1), default_tlogt_delta(a)};
  const auto advice = build_advice_tlogt(lang, a, 2, 2, th.small_delta);
  ASSERT_EQ(advice.mode, AdviceMode::dominating_set);
  EXPECT_EQ(advice.edge_size, 4U);
  for (const auto& g : advice.dominating_set.elements) EXPECT_EQ(g.size(), 3U);
  EXPECT_TRUE(decide_tlogt({5, 3}, advice, a, th).accept);
  for (Instance x = 0; x < 8; ++x) EXPECT_EQ(decide_tlogt({x, 3}, advice, a, th).accept, x == 5);
  EXPECT_THROW(decide({5, 3}, advice, a, th), DomainError);
}

TEST(Tlogt, AuditAgreesOnRandomLanguages) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lang = random_language(4, seed);
    const auto a = ideal_or_compression(lang, 3);
    AuditOptions options;
    options.reduction = ReductionMode::tlogt;
    options.alphabet_size = 2;
    const auto report = audit_language(lang, a, 3, {Rational(1), default_tlogt_delta(a)}, options);
    EXPECT_EQ(report.agreement(), 1.0) << "seed " << seed;
  }
}

TEST(Tlogt, NoisyCompressionRejected) {
  const auto lang = ToyLanguage::empty(3);
  const auto a = noisy_or_compression(lang, 2, make_rational(1, 4), Rational(0), 2);
  Advice advice;
  advice.input_length = 3;
  advice.reduction = ReductionMode::tlogt;
  EXPECT_THROW(decide_tlogt({0, 3}, advice, a, gap(Rational(1), Rational(0))), DomainError);
}

TEST(Defaults, ClosedForms) {
  const auto a = noisy_or_compression(ToyLanguage::empty(2), 4, make_rational(1, 8), make_rational(1, 4), 3);
  EXPECT_EQ(default_big_delta(a), make_rational(5, 8));
  EXPECT_NEAR(to_double(default_small_delta(a)), 0.5887050112577373, 1e-15);
  EXPECT_NEAR(to_double(default_tlogt_delta(a)), 1 - std::exp(-1 - std::log(2.0) / 4), 1e-15);
}

}  // namespace
}  // namespace complab
