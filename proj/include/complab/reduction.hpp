#pragma once

// Simulation of the reduction from a toy language L to the statistical
// distance promise problem: advice construction, non-adaptive oracle queries,
// and an exhaustive audit over every input of one length.

#include "complab/set_compression.hpp"
#include "complab/tournament.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace complab {

enum class PromiseTag { yes, no, gap };

std::string to_string(PromiseTag tag);

/// Promise gap delta < Delta <= 1.
struct Thresholds {
  Rational big_delta;
  Rational small_delta;

  /// Throws DomainError("empty promise gap") unless 0 <= delta < Delta <= 1.
  void validate() const;
};

/// A pair of explicit distributions standing in for the two sampling circuits.
class SdQuery {
 public:
  SdQuery(Distribution<Output> left, Distribution<Output> right, Thresholds thresholds);

  const Distribution<Output>& left() const { return left_; }
  const Distribution<Output>& right() const { return right_; }
  const Thresholds& thresholds() const { return thresholds_; }
  const Rational& distance() const { return distance_; }
  /// yes iff d >= Delta, no iff d <= delta, gap otherwise.
  PromiseTag tag() const;

 private:
  Distribution<Output> left_;
  Distribution<Output> right_;
  Thresholds thresholds_;
  Rational distance_;
};

/// Answers true iff d >= delta + position * (Delta - delta); position in (0, 1].
/// Any such oracle is correct on every query that satisfies the promise.
class SdOracle {
 public:
  SdOracle() : SdOracle(make_rational(1, 2)) {}
  explicit SdOracle(Rational position);

  bool operator()(const SdQuery& q) const;
  const Rational& position() const { return position_; }

 private:
  Rational position_;
};

/// The default oracle: threshold at the midpoint (Delta + delta) / 2, ties answer true.
bool exact_sd_oracle(const SdQuery& q);

enum class AdviceMode { dominating_set, full_v };
enum class ReductionMode { base, tlogt };

std::string to_string(AdviceMode mode);
std::string to_string(ReductionMode mode);

struct Advice {
  unsigned input_length = 0;
  AdviceMode mode = AdviceMode::full_v;
  ReductionMode reduction = ReductionMode::base;
  std::size_t t = 0;
  /// Size of the tournament's edges: t (base) or t * |Sigma| (tlogt).
  std::size_t edge_size = 0;
  DominatingSet dominating_set;
  /// full_v mode: every no-instance of the input length.
  std::vector<Instance> no_instances;

  std::size_t size() const;
};

/// Advice for the base reduction: V itself when |V| <= t, else a greedy
/// dominating set of the selector tournament over V = no-instances.
Advice build_advice(const ToyLanguage& language, const SetEncodedCompression& a, std::size_t t,
                    const Rational& delta, GreedyOptions options = {});

/// Advice for the block reduction: V itself when |V| <= t * |Sigma|, else a
/// greedy dominating set of the block tournament.
Advice build_advice_tlogt(const ToyLanguage& language, const SetEncodedCompression& a,
                          std::size_t t, std::size_t alphabet_size, const Rational& delta,
                          GreedyOptions options = {});

/// The query batch for v; empty with `rejected_by_membership` set when v lies
/// in an advice element (or is listed in full_v advice). A pure function of
/// (v, advice); the oracle plays no part in it.
struct QueryPlan {
  bool rejected_by_membership = false;
  bool listed = false;
  std::vector<SdQuery> queries;
};

QueryPlan plan_queries(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                       const Thresholds& thresholds);

struct Decision {
  bool accept = false;
  bool rejected_by_membership = false;
  std::vector<PromiseTag> tags;
  std::vector<Rational> distances;
};

/// Base reduction decision: reject if v lies in some g; otherwise accept iff the
/// oracle answers true on every query (A(U_{2^g}), A(U_{2^g} u {v})).
Decision decide(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                const Thresholds& thresholds, const SdOracle& oracle = SdOracle());

/// Block reduction decision; queries (A(X_e | v not in X_e), A(X_e | v in X_e)) with e = g u {v}.
Decision decide_tlogt(const BitString& v, const Advice& advice, const SetEncodedCompression& a,
                      const Thresholds& thresholds, const SdOracle& oracle = SdOracle());

struct AuditLimits {
  unsigned max_input_length = 10;
  std::size_t max_t = 16;
  std::size_t max_block_edge = 12;
};

struct AuditReport {
  unsigned n = 0;
  std::size_t t = 0;
  ReductionMode reduction = ReductionMode::base;
  AdviceMode advice_mode = AdviceMode::full_v;
  std::size_t advice_size = 0;
  std::size_t inputs = 0;
  std::size_t agreements = 0;
  std::size_t yes_tags = 0;
  std::size_t no_tags = 0;
  std::size_t gap_tags = 0;
  std::vector<Instance> disagreements;
  Advice advice;

  double agreement() const { return inputs == 0 ? 1.0 : static_cast<double>(agreements) / inputs; }
};

struct AuditOptions {
  ReductionMode reduction = ReductionMode::base;
  /// Block size |Sigma| for the tlogt reduction.
  std::size_t alphabet_size = 2;
  GreedyOptions greedy;
  AuditLimits limits;
  SdOracle oracle;
};

/// Builds advice once, decides every string of length n, and compares with membership.
AuditReport audit_language(const ToyLanguage& language, const SetEncodedCompression& a,
                           std::size_t t, const Thresholds& thresholds,
                           const AuditOptions& options = {});

/// Delta = 1 - (e_s + e_c).
Rational default_big_delta(const SetEncodedCompression& a);
/// delta = sqrt(2 ln 2 * m / t), as the exact value of the nearest double.
Rational default_small_delta(const SetEncodedCompression& a);
/// 1 - exp(-1 - ln2 * m / t) for the block reduction: the Vajda bound with
/// I(f(X):X) <= m, without the 1/|Sigma| term.
Rational default_tlogt_delta(const SetEncodedCompression& a);

}  // namespace complab
