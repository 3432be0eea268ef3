#pragma once

// Left- and right-hand sides of the noise-sensitivity inequalities for
// compressive maps, with the intermediate steps of their proofs exposed so
// each link of the chain can be checked on its own.

#include "complab/compressive_map.hpp"
#include "complab/distribution.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace complab {

enum class LemmaId { kl_bound, pinsker_sensitivity, vajda_sensitivity };

std::string to_string(LemmaId id);
LemmaId lemma_from_string(const std::string& name);

/// Coordinate j (0-based) and, where the term depends on one, the symbol x.
struct Witness {
  std::size_t coordinate = 0;
  std::optional<Symbol> value;
};

/// One named step of a proof chain: each step must not exceed the next.
struct ChainStep {
  std::string name;
  double value = 0;
};

struct LemmaReport {
  LemmaId lemma = LemmaId::kl_bound;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  /// Exact left-hand side when it is a rational quantity (statistical distances).
  std::optional<Rational> exact_lhs;
  /// Witness of the largest individual term of the averaged left-hand side.
  Witness witness;
  double max_term = 0;
  /// lhs <= chain[0] <= chain[1] <= ... <= rhs.
  std::vector<ChainStep> chain;
  nlohmann::json params = nlohmann::json::object();

  bool holds(double tolerance = kFloatTolerance) const { return slack >= -tolerance; }
  /// Every consecutive pair lhs, chain..., rhs is ordered within tolerance.
  bool chain_holds(double tolerance = kFloatTolerance) const;
  /// Exact comparison of the rational lhs against the (float) rhs.
  std::optional<bool> holds_exactly() const;
};

nlohmann::json to_json(const LemmaReport& report);

/// E_{j ~ U[t]} d(f(X|_{j<-0}), f(X|_{j<-1})) for a binary alphabet.
template <Mass M>
M avg_noise_sensitivity(const CompressiveMap& f, const ProductDistribution<M>& x);

/// I(f(X) : X) in bits.
template <Mass M>
double input_output_information(const CompressiveMap& f, const ProductDistribution<M>& x);

struct KlSensitivity {
  /// E_j E_{x ~ X_j} KL(f(X|_{j<-x}) || f(X)), bits.
  double lhs = 0;
  /// I(f(X) : X) / t, bits.
  double rhs = 0;
  double information = 0;
  double max_term = 0;
  Witness witness;
};

template <Mass M>
KlSensitivity kl_sensitivity(const CompressiveMap& f, const ProductDistribution<M>& x);

/// KL-versus-information bound for an arbitrary product distribution X.
template <Mass M>
LemmaReport verify_kl_bound(const CompressiveMap& f, const ProductDistribution<M>& x);

/// Average noise sensitivity of f under uniform X against sqrt(2 ln 2 * m / t).
template <Mass M>
LemmaReport verify_pinsker_sensitivity(const CompressiveMap& f);

/// E_j E_x d(f(X|_{X_j != x}), f(X|_{X_j = x})) under uniform X against
/// 1 - exp(-1 - ln2 * I(f(X):X) / t) + 1/|Sigma|.
template <Mass M>
LemmaReport verify_vajda_sensitivity(const CompressiveMap& f);

/// sqrt(2 ln 2 * epsilon).
double pinsker_delta(double epsilon);
/// 1 - exp(-1 - kl_nats).
double vajda_bound(double kl_nats);

#define COMPLAB_SENSITIVITY_EXTERN(M)                                                          \
  extern template M avg_noise_sensitivity(const CompressiveMap&, const ProductDistribution<M>&); \
  extern template double input_output_information(const CompressiveMap&,                        \
                                                  const ProductDistribution<M>&);               \
  extern template KlSensitivity kl_sensitivity(const CompressiveMap&,                           \
                                               const ProductDistribution<M>&);                  \
  extern template LemmaReport verify_kl_bound(const CompressiveMap&,                            \
                                              const ProductDistribution<M>&);                   \
  extern template LemmaReport verify_pinsker_sensitivity<M>(const CompressiveMap&);             \
  extern template LemmaReport verify_vajda_sensitivity<M>(const CompressiveMap&);

COMPLAB_SENSITIVITY_EXTERN(Rational)
COMPLAB_SENSITIVITY_EXTERN(double)
#undef COMPLAB_SENSITIVITY_EXTERN

}  // namespace complab
