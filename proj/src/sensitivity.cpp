#include "complab/sensitivity.hpp"

#include "complab/budget.hpp"
#include "complab/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace complab {

std::string to_string(LemmaId id) {
  switch (id) {
    case LemmaId::kl_bound:
      return "KL_BOUND";
    case LemmaId::pinsker_sensitivity:
      return "PINSKER_SENS";
    case LemmaId::vajda_sensitivity:
      return "VAJDA_SENS";
  }
  return "?";
}

LemmaId lemma_from_string(const std::string& name) {
  if (name == "kl" || name == "KL_BOUND") return LemmaId::kl_bound;
  if (name == "pinsker" || name == "PINSKER_SENS") return LemmaId::pinsker_sensitivity;
  if (name == "vajda" || name == "VAJDA_SENS") return LemmaId::vajda_sensitivity;
  throw DomainError("unknown lemma '" + name + "' (expected pinsker, kl or vajda)");
}

bool LemmaReport::chain_holds(double tolerance) const {
  double prev = lhs;
  for (const auto& step : chain) {
    if (step.value < prev - tolerance) return false;
    prev = step.value;
  }
  return rhs >= prev - tolerance;
}

std::optional<bool> LemmaReport::holds_exactly() const {
  if (!exact_lhs || !std::isfinite(rhs)) return std::nullopt;
  return *exact_lhs <= exact_rational(rhs);
}

nlohmann::json to_json(const LemmaReport& report) {
  nlohmann::json witness{{"j", report.witness.coordinate}};
  witness["x"] = report.witness.value ? nlohmann::json(*report.witness.value) : nlohmann::json(nullptr);
  nlohmann::json chain = nlohmann::json::array();
  for (const auto& step : report.chain) chain.push_back({{"step", step.name}, {"value", step.value}});
  nlohmann::json out{{"lemma", to_string(report.lemma)},
                     {"lhs", report.lhs},
                     {"rhs", report.rhs},
                     {"slack", report.slack},
                     {"witness", std::move(witness)},
                     {"max_term", report.max_term},
                     {"chain", std::move(chain)},
                     {"params", report.params}};
  if (report.exact_lhs) out["exact_lhs"] = to_string(*report.exact_lhs);
  return out;
}

double pinsker_delta(double epsilon) {
  if (epsilon < 0) throw DomainError("negative compression ratio");
  return std::sqrt(2 * std::numbers::ln2 * epsilon);
}

double vajda_bound(double kl_nats) { return 1 - std::exp(-1 - kl_nats); }

namespace {

void check_shape(const CompressiveMap& f, std::uint32_t alphabet_size, std::size_t arity) {
  if (alphabet_size != f.alphabet_size() || arity != f.arity()) {
    throw DomainError("input distribution does not match the map's alphabet and arity");
  }
  if (f.arity() == 0) throw DomainError("map has no input coordinates");
}

/// Outputs of f on each conditioning X|_{j<-x}, for every j and x in supp X_j.
template <Mass M>
struct Conditionals {
  Distribution<Output, M> base;
  /// per coordinate: (x, Pr[X_j = x], f(X|_{j<-x})).
  std::vector<std::vector<std::tuple<Symbol, M, Distribution<Output, M>>>> pinned;
};

template <Mass M>
Conditionals<M> conditionals(const CompressiveMap& f, const ProductDistribution<M>& x) {
  Conditionals<M> out{output_distribution(f, x), {}};
  out.pinned.resize(x.arity());
  for (std::size_t j = 0; j < x.arity(); ++j) {
    for (const auto& [s, p] : x.factor(j).entries()) {
      if (p == 0) continue;
      out.pinned[j].emplace_back(s, p,
                                 output_distribution(f, x.condition(j, CoordinateConstraint::equal(s))));
    }
  }
  return out;
}

nlohmann::json map_params(const CompressiveMap& f) {
  return {{"t", f.arity()},
          {"m", f.output_bits()},
          {"r", f.randomness_bits()},
          {"alphabet_size", f.alphabet_size()}};
}

}  // namespace

template <Mass M>
M avg_noise_sensitivity(const CompressiveMap& f, const ProductDistribution<M>& x) {
  if (x.alphabet_size() != 2) {
    throw DomainError("noise sensitivity needs a binary alphabet; use the Vajda variant");
  }
  check_shape(f, x.alphabet_size(), x.arity());
  M sum = 0;
  for (std::size_t j = 0; j < x.arity(); ++j) {
    sum += statistical_distance(output_distribution(f, x.condition(j, CoordinateConstraint::equal(0))),
                                output_distribution(f, x.condition(j, CoordinateConstraint::equal(1))));
  }
  return sum / M(static_cast<double>(x.arity()));
}

template <Mass M>
double input_output_information(const CompressiveMap& f, const ProductDistribution<M>& x) {
  check_shape(f, x.alphabet_size(), x.arity());
  // I = sum_w p(w) sum_y p(y|w) log(p(y|w) / p(y)).
  const auto py = output_distribution(f, x);
  std::map<Output, double> log_py;
  for (const auto& [y, m] : py.entries()) log_py[y] = std::log2(to_double(m));
  const std::uint64_t coins = f.coin_count();
  const double log_coins = std::log2(static_cast<double>(coins));
  std::map<Output, std::uint64_t> per_word;
  double info = 0;
  x.for_each_word([&](WordIndex w, const M& m) {
    per_word.clear();
    for (std::uint64_t c = 0; c < coins; ++c) ++per_word[f(w, c)];
    double term = 0;
    for (const auto& [y, n] : per_word) {
      const double p = static_cast<double>(n) / static_cast<double>(coins);
      term += p * (std::log2(static_cast<double>(n)) - log_coins - log_py.at(y));
    }
    info += to_double(m) * term;
  });
  return std::max(info, 0.0);
}

template <Mass M>
KlSensitivity kl_sensitivity(const CompressiveMap& f, const ProductDistribution<M>& x) {
  check_shape(f, x.alphabet_size(), x.arity());
  const auto cond = conditionals(f, x);
  KlSensitivity out;
  out.max_term = -1;
  double sum = 0;
  for (std::size_t j = 0; j < cond.pinned.size(); ++j) {
    for (const auto& [s, p, fx] : cond.pinned[j]) {
      const double kl = kl_divergence(fx, cond.base);
      if (!std::isfinite(kl)) {
        throw InvariantViolation("infinite KL term at j=" + std::to_string(j) +
                                 ", x=" + std::to_string(s) + ": conditioned output leaves supp f(X)");
      }
      sum += to_double(p) * kl;
      if (kl > out.max_term) {
        out.max_term = kl;
        out.witness = Witness{j, s};
      }
    }
  }
  const double t = static_cast<double>(x.arity());
  out.lhs = sum / t;
  out.information = input_output_information(f, x);
  out.rhs = out.information / t;
  return out;
}

template <Mass M>
LemmaReport verify_kl_bound(const CompressiveMap& f, const ProductDistribution<M>& x) {
  const KlSensitivity kl = kl_sensitivity(f, x);
  LemmaReport report;
  report.lemma = LemmaId::kl_bound;
  report.lhs = kl.lhs;
  report.rhs = kl.rhs;
  report.slack = kl.rhs - kl.lhs;
  report.witness = kl.witness;
  report.max_term = kl.max_term;
  report.params = map_params(f);
  report.params["information"] = kl.information;
  return report;
}

template <Mass M>
LemmaReport verify_pinsker_sensitivity(const CompressiveMap& f) {
  if (f.alphabet_size() != 2) throw DomainError("the Pinsker check needs a binary alphabet");
  const auto x = ProductDistribution<M>::uniform(2, f.arity());
  check_shape(f, 2, f.arity());
  const auto cond = conditionals(f, x);
  const double t = static_cast<double>(f.arity());

  M lhs = 0;
  LemmaReport report;
  report.lemma = LemmaId::pinsker_sensitivity;
  report.max_term = -1;
  double triangle = 0;
  double pinsker_terms = 0;
  double mean_kl = 0;
  for (std::size_t j = 0; j < cond.pinned.size(); ++j) {
    const auto& pinned = cond.pinned[j];
    const M d = statistical_distance(std::get<2>(pinned[0]), std::get<2>(pinned[1]));
    lhs += d;
    if (to_double(d) > report.max_term) {
      report.max_term = to_double(d);
      report.witness = Witness{j, std::nullopt};
    }
    for (const auto& [s, p, fx] : pinned) {
      const double w = to_double(p);
      triangle += w * to_double(statistical_distance(cond.base, fx));
      const double kl = kl_divergence(fx, cond.base);
      pinsker_terms += w * std::sqrt(std::numbers::ln2 / 2 * kl);
      mean_kl += w * kl;
    }
  }
  lhs = lhs / M(t);
  triangle /= t;
  pinsker_terms /= t;
  mean_kl /= t;
  const double information = input_output_information(f, x);
  const double epsilon = static_cast<double>(f.output_bits()) / t;

  report.lhs = to_double(lhs);
  if constexpr (is_exact_v<M>) report.exact_lhs = lhs;
  report.rhs = pinsker_delta(epsilon);
  report.slack = report.rhs - report.lhs;
  report.chain = {
      {"triangle", 2 * triangle},
      {"pinsker", 2 * pinsker_terms},
      {"jensen", 2 * std::sqrt(std::numbers::ln2 / 2 * mean_kl)},
      {"kl_bound", 2 * std::sqrt(std::numbers::ln2 / 2 * information / t)},
  };
  report.params = map_params(f);
  report.params["epsilon"] = epsilon;
  report.params["information"] = information;
  return report;
}

template <Mass M>
LemmaReport verify_vajda_sensitivity(const CompressiveMap& f) {
  const std::uint32_t k = f.alphabet_size();
  if (k < 2) throw DomainError("the Vajda check needs |Sigma| >= 2");
  const auto x = ProductDistribution<M>::uniform(k, f.arity());
  check_shape(f, k, f.arity());
  const auto cond = conditionals(f, x);
  const double t = static_cast<double>(f.arity());
  const double inv_k = 1.0 / k;

  M lhs = 0;
  LemmaReport report;
  report.lemma = LemmaId::vajda_sensitivity;
  report.max_term = -1;
  double to_base = 0;
  double vajda_terms = 0;
  double mean_kl_nats = 0;
  for (std::size_t j = 0; j < cond.pinned.size(); ++j) {
    for (const auto& [s, p, fx] : cond.pinned[j]) {
      const auto rest = output_distribution(f, x.condition(j, CoordinateConstraint::not_equal(s)));
      const M d = statistical_distance(rest, fx);
      lhs += p * d;
      if (to_double(d) > report.max_term) {
        report.max_term = to_double(d);
        report.witness = Witness{j, s};
      }
      const double w = to_double(p);
      to_base += w * to_double(statistical_distance(cond.base, fx));
      const double kl = kl_divergence_nats(fx, cond.base);
      vajda_terms += w * vajda_bound(kl);
      mean_kl_nats += w * kl;
    }
  }
  lhs = lhs / M(t);
  to_base /= t;
  vajda_terms /= t;
  mean_kl_nats /= t;
  const double information = input_output_information(f, x);

  report.lhs = to_double(lhs);
  if constexpr (is_exact_v<M>) report.exact_lhs = lhs;
  report.rhs = vajda_bound(std::numbers::ln2 * information / t) + inv_k;
  report.slack = report.rhs - report.lhs;
  report.chain = {
      {"triangle", to_base + inv_k},
      {"vajda", vajda_terms + inv_k},
      {"jensen", vajda_bound(mean_kl_nats) + inv_k},
  };
  report.params = map_params(f);
  report.params["information"] = information;
  return report;
}

#define COMPLAB_SENSITIVITY_INSTANTIATE(M)                                                     \
  template M avg_noise_sensitivity(const CompressiveMap&, const ProductDistribution<M>&);      \
  template double input_output_information(const CompressiveMap&, const ProductDistribution<M>&); \
  template KlSensitivity kl_sensitivity(const CompressiveMap&, const ProductDistribution<M>&);  \
  template LemmaReport verify_kl_bound(const CompressiveMap&, const ProductDistribution<M>&);   \
  template LemmaReport verify_pinsker_sensitivity<M>(const CompressiveMap&);                    \
  template LemmaReport verify_vajda_sensitivity<M>(const CompressiveMap&);

COMPLAB_SENSITIVITY_INSTANTIATE(Rational)
COMPLAB_SENSITIVITY_INSTANTIATE(double)

}  // namespace complab
