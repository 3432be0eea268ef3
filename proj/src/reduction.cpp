#include "complab/reduction.hpp"

#include "complab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace complab {

std::string to_string(PromiseTag tag) {
  switch (tag) {
    case PromiseTag::yes:
      return "yes";
    case PromiseTag::no:
      return "no";
    case PromiseTag::gap:
      return "gap";
  }
  return "?";
}

std::string to_string(AdviceMode mode) {
  return mode == AdviceMode::dominating_set ? "DOMSET" : "FULL_V";
}

std::string to_string(ReductionMode mode) { return mode == ReductionMode::base ? "base" : "tlogt"; }

void Thresholds::validate() const {
  if (small_delta < 0 || big_delta > 1 || !(small_delta < big_delta)) {
    throw DomainError("empty promise gap: need 0 <= delta < Delta <= 1 (delta " +
                      to_string(small_delta) + ", Delta " + to_string(big_delta) + ")");
  }
}

SdQuery::SdQuery(Distribution<Output> left, Distribution<Output> right, Thresholds thresholds)
    : left_(std::move(left)), right_(std::move(right)), thresholds_(std::move(thresholds)) {
  thresholds_.validate();
  distance_ = statistical_distance(left_, right_);
}

PromiseTag SdQuery::tag() const {
  if (distance_ >= thresholds_.big_delta) return PromiseTag::yes;
  if (distance_ <= thresholds_.small_delta) return PromiseTag::no;
  return PromiseTag::gap;
}

SdOracle::SdOracle(Rational position) : position_(std::move(position)) {
  if (position_ <= 0 || position_ > 1) throw DomainError("oracle threshold position must lie in (0, 1]");
}

bool SdOracle::operator()(const SdQuery& q) const {
  const auto& th = q.thresholds();
  return q.distance() >= th.small_delta + position_ * (th.big_delta - th.small_delta);
}

bool exact_sd_oracle(const SdQuery& q) { return SdOracle()(q); }

std::size_t Advice::size() const {
  return mode == AdviceMode::full_v ? no_instances.size() : dominating_set.elements.size();
}

namespace {

void check_language(const ToyLanguage& language, const SetEncodedCompression& a) {
  if (language.input_length() != a.input_length()) {
    throw DomainError("compression and language disagree on the input length");
  }
}

Advice finish_advice(Advice advice, const HypergraphTournament& s, GreedyOptions options,
                     const std::vector<Instance>& no) {
  advice.mode = AdviceMode::dominating_set;
  advice.dominating_set = greedy_dominating_set(s, options);
  const auto check = verify_domination(s, advice.dominating_set, no);
  if (!check.all_dominated) {
    throw InvariantViolation("greedy dominating set misses " + std::to_string(check.undominated.size()) +
                             " vertices");
  }
  const std::size_t guardrail = advice.edge_size * std::max(1U, advice.input_length);
  if (advice.dominating_set.elements.size() > guardrail) {
    throw InvariantViolation("advice has " + std::to_string(advice.dominating_set.elements.size()) +
                             " elements, above the polynomial guardrail " + std::to_string(guardrail));
  }
  return advice;
}

}  // namespace

Advice build_advice(const ToyLanguage& language, const SetEncodedCompression& a, std::size_t t,
                    const Rational& delta, GreedyOptions options) {
  check_language(language, a);
  if (t == 0 || t > a.arity()) throw DomainError("t must lie in [1, arity of the compression]");
  Advice advice;
  advice.input_length = language.input_length();
  advice.reduction = ReductionMode::base;
  advice.t = t;
  advice.edge_size = t;
  const auto no = language.no_instances();
  if (no.size() <= t) {
    advice.mode = AdviceMode::full_v;
    advice.no_instances = no;
    return advice;
  }
  const auto s = selector_from_compression(a, no, t, delta);
  return finish_advice(std::move(advice), s, options, no);
}

Advice build_advice_tlogt(const ToyLanguage& language, const SetEncodedCompression& a,
                          std::size_t t, std::size_t alphabet_size, const Rational& delta,
                          GreedyOptions options) {
  check_language(language, a);
  if (t == 0 || t > a.arity()) throw DomainError("t must lie in [1, arity of the compression]");
  if (alphabet_size < 2) throw DomainError("the block reduction needs |Sigma| >= 2");
  Advice advice;
  advice.input_length = language.input_length();
  advice.reduction = ReductionMode::tlogt;
  advice.t = t;
  advice.edge_size = t * alphabet_size;
  const auto no = language.no_instances();
  if (no.size() <= advice.edge_size) {
    advice.mode = AdviceMode::full_v;
    advice.no_instances = no;
    return advice;
  }
  const auto s = block_tournament(a, no, t, alphabet_size, delta);
  return finish_advice(std::move(advice), s, options, no);
}

QueryPlan plan_queries(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                       const Thresholds& thresholds) {
  thresholds.validate();
  if (v.length != advice.input_length || v.length != a.input_length()) {
    throw DomainError("input length does not match the advice");
  }
  QueryPlan plan;
  if (advice.mode == AdviceMode::full_v) {
    plan.listed = std::binary_search(advice.no_instances.begin(), advice.no_instances.end(), v.value);
    plan.rejected_by_membership = plan.listed;
    return plan;
  }
  const auto& elements = advice.dominating_set.elements;
  for (const auto& g : elements) {
    if (std::binary_search(g.begin(), g.end(), v.value)) {
      plan.rejected_by_membership = true;
      return plan;
    }
  }
  for (const auto& g : elements) {
    InstanceSet e = g;
    e.insert(std::upper_bound(e.begin(), e.end(), v.value), v.value);
    if (advice.reduction == ReductionMode::base) {
      plan.queries.emplace_back(subset_output_counts(a, g, SubsetMode::all).to_distribution(),
                                subset_output_counts(a, e, SubsetMode::with, v.value).to_distribution(),
                                thresholds);
    } else {
      if (e.size() != advice.edge_size) throw DomainError("advice element has the wrong size");
      const std::size_t k = advice.edge_size / advice.t;
      const auto blocks = split_into_blocks(e, k);
      std::size_t j = 0;
      Symbol s = 0;
      for (; j < blocks.size(); ++j) {
        auto it = std::lower_bound(blocks[j].begin(), blocks[j].end(), v.value);
        if (it != blocks[j].end() && *it == v.value) {
          s = static_cast<Symbol>(it - blocks[j].begin());
          break;
        }
      }
      const CompressiveMap f = block_encoding(a, blocks);
      const auto x = ProductDistribution<Rational>::uniform(f.alphabet_size(), f.arity());
      plan.queries.emplace_back(
          output_distribution(f, x.condition(j, CoordinateConstraint::not_equal(s))),
          output_distribution(f, x.condition(j, CoordinateConstraint::equal(s))), thresholds);
    }
  }
  return plan;
}

namespace {

Decision run_plan(const QueryPlan& plan, const SdOracle& oracle) {
  Decision d;
  if (plan.rejected_by_membership) {
    d.rejected_by_membership = true;
    return d;
  }
  d.accept = true;
  for (const auto& q : plan.queries) {
    d.tags.push_back(q.tag());
    d.distances.push_back(q.distance());
    if (!oracle(q)) d.accept = false;
  }
  return d;
}

}  // namespace

Decision decide(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                const Thresholds& thresholds, const SdOracle& oracle) {
  if (advice.reduction != ReductionMode::base) throw DomainError("advice was built for the block reduction");
  return run_plan(plan_queries(v, advice, a, thresholds), oracle);
}

Decision decide_tlogt(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                      const Thresholds& thresholds, const SdOracle& oracle) {
  if (advice.reduction != ReductionMode::tlogt) throw DomainError("advice was built for the base reduction");
  if (a.coin_bits() != 0 || a.soundness_error() != 0 || a.completeness_error() != 0) {
    throw DomainError("the block reduction needs a deterministic, error-free compression");
  }
  return run_plan(plan_queries(v, advice, a, thresholds), oracle);
}

AuditReport audit_language(const ToyLanguage& language, const SetEncodedCompression& a,
                           std::size_t t, const Thresholds& thresholds,
                           const AuditOptions& options) {
  thresholds.validate();
  check_language(language, a);
  const unsigned n = language.input_length();
  if (n > options.limits.max_input_length) throw BudgetExceeded("audit input length above the limit");
  if (t > options.limits.max_t) throw BudgetExceeded("audit arity above the limit");
  if (options.reduction == ReductionMode::tlogt &&
      t * options.alphabet_size > options.limits.max_block_edge) {
    throw BudgetExceeded("block edge size t*|Sigma| above the limit");
  }

  AuditReport report;
  report.n = n;
  report.t = t;
  report.reduction = options.reduction;
  report.advice = options.reduction == ReductionMode::base
                      ? build_advice(language, a, t, thresholds.small_delta, options.greedy)
                      : build_advice_tlogt(language, a, t, options.alphabet_size,
                                           thresholds.small_delta, options.greedy);
  report.advice_mode = report.advice.mode;
  report.advice_size = report.advice.size();
  for (Instance x = 0; x < language.universe_size(); ++x) {
    const BitString v{x, n};
    const Decision d = options.reduction == ReductionMode::base
                           ? decide(v, report.advice, a, thresholds, options.oracle)
                           : decide_tlogt(v, report.advice, a, thresholds, options.oracle);
    for (PromiseTag tag : d.tags) {
      if (tag == PromiseTag::yes) ++report.yes_tags;
      if (tag == PromiseTag::no) ++report.no_tags;
      if (tag == PromiseTag::gap) ++report.gap_tags;
    }
    ++report.inputs;
    if (d.accept == language.contains(x)) {
      ++report.agreements;
    } else {
      report.disagreements.push_back(x);
    }
  }
  return report;
}

Rational default_big_delta(const SetEncodedCompression& a) {
  return Rational(1) - (a.soundness_error() + a.completeness_error());
}

Rational default_small_delta(const SetEncodedCompression& a) {
  return exact_rational(std::sqrt(2 * std::numbers::ln2 * a.compression_ratio()));
}

Rational default_tlogt_delta(const SetEncodedCompression& a) {
  return exact_rational(1 - std::exp(-1 - std::numbers::ln2 * a.compression_ratio()));
}

}  // namespace complab
