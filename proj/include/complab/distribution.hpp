#pragma once

// Exact finite probability distributions and the information-theoretic
// functionals built on them.
//
// A Distribution stores (outcome, mass) entries sorted by outcome, so two
// distributions over the same outcome type can be compared and merged in
// linear time. Zero-mass entries are allowed in the outcome list but never
// reported by support().

#include "complab/error.hpp"
#include "complab/mass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

namespace complab {

namespace detail {

/// Float totals may miss one by a few ulps; the first entry absorbs the
/// difference. No-op for exact masses.
template <class Entries>
void absorb_rounding(Entries& entries) {
  using M = typename Entries::value_type::second_type;
  if constexpr (!is_exact_v<M>) {
    if (entries.empty()) return;
    double total = 0;
    for (const auto& e : entries) total += e.second;
    entries.front().second = std::max(0.0, entries.front().second + (1.0 - total));
  }
}

}  // namespace detail

template <class Outcome, Mass M = Rational>
class Distribution {
 public:
  using outcome_type = Outcome;
  using mass_type = M;
  using Entry = std::pair<Outcome, M>;

  /// Validates and sorts `entries`. Rejects duplicate outcomes, negative mass,
  /// and totals different from one (exactly, or within 1e-12 for floats).
  static Distribution from_entries(std::vector<Entry> entries) {
    if (entries.empty()) throw DomainError("empty support");
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    M total = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && !(entries[i - 1].first < entries[i].first)) {
        throw DomainError("duplicate outcome in distribution");
      }
      if (entries[i].second < 0) throw DomainError("negative probability mass");
      total += entries[i].second;
    }
    if constexpr (is_exact_v<M>) {
      if (total != 1) throw DomainError("masses do not sum to one (total " + to_string(total) + ")");
    } else {
      if (std::abs(total - 1.0) > kFloatMassTolerance) {
        throw DomainError("masses do not sum to one within 1e-12");
      }
    }
    return Distribution(std::move(entries));
  }

  static Distribution point(Outcome outcome) {
    std::vector<Entry> entries;
    entries.emplace_back(std::move(outcome), M(1));
    return Distribution(std::move(entries));
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::vector<Outcome> outcomes() const {
    std::vector<Outcome> out;
    out.reserve(entries_.size());
    for (const auto& [o, p] : entries_) out.push_back(o);
    return out;
  }

  std::vector<Outcome> support() const {
    std::vector<Outcome> out;
    for (const auto& [o, p] : entries_) {
      if (p > 0) out.push_back(o);
    }
    return out;
  }

  M mass(const Outcome& outcome) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), outcome,
                               [](const Entry& e, const Outcome& o) { return e.first < o; });
    if (it == entries_.end() || outcome < it->first) return M(0);
    return it->second;
  }

  bool in_support(const Outcome& outcome) const { return mass(outcome) > 0; }

  /// Equality of the underlying measures: zero-mass entries are ignored.
  friend bool operator==(const Distribution& a, const Distribution& b) {
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    auto skip = [](auto& it, auto end) {
      while (it != end && it->second == 0) ++it;
    };
    while (true) {
      skip(ia, a.entries_.end());
      skip(ib, b.entries_.end());
      if (ia == a.entries_.end() || ib == b.entries_.end()) {
        return ia == a.entries_.end() && ib == b.entries_.end();
      }
      if (!(ia->first == ib->first) || ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
  }

 private:
  explicit Distribution(std::vector<Entry> sorted) : entries_(std::move(sorted)) {}

  std::vector<Entry> entries_;
};

/// Accumulates mass per outcome; build() validates the total.
template <class Outcome, Mass M = Rational>
class DistributionBuilder {
 public:
  void add(const Outcome& outcome, const M& mass) {
    auto [it, inserted] = acc_.try_emplace(outcome, mass);
    if (!inserted) it->second += mass;
  }

  Distribution<Outcome, M> build() && {
    std::vector<typename Distribution<Outcome, M>::Entry> entries;
    entries.reserve(acc_.size());
    for (auto& [o, p] : acc_) entries.emplace_back(o, std::move(p));
    return Distribution<Outcome, M>::from_entries(std::move(entries));
  }

 private:
  std::map<Outcome, M> acc_;
};

template <Mass M = Rational, class Outcome>
Distribution<Outcome, M> uniform(std::vector<Outcome> ground_set) {
  if (ground_set.empty()) throw DomainError("empty support");
  const M each = mass_from_counts<M>(1, ground_set.size());
  std::vector<typename Distribution<Outcome, M>::Entry> entries;
  entries.reserve(ground_set.size());
  for (auto& o : ground_set) entries.emplace_back(std::move(o), each);
  detail::absorb_rounding(entries);
  return Distribution<Outcome, M>::from_entries(std::move(entries));
}

/// Bernoulli distribution over {0, 1} with Pr(1) = p.
template <Mass M = Rational>
Distribution<std::uint64_t, M> bernoulli(const M& p) {
  if (p < 0 || p > 1) throw DomainError("bernoulli parameter outside [0,1]");
  return Distribution<std::uint64_t, M>::from_entries({{0, M(1) - p}, {1, p}});
}

namespace detail {

/// Walks the union of two sorted outcome lists; fn(p_mass, q_mass).
template <class Outcome, Mass M, class Fn>
void merge_walk(const Distribution<Outcome, M>& p, const Distribution<Outcome, M>& q, Fn&& fn) {
  const auto& a = p.entries();
  const auto& b = q.entries();
  std::size_t i = 0;
  std::size_t j = 0;
  const M zero = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      fn(a[i].second, zero);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      fn(zero, b[j].second);
      ++j;
    } else {
      fn(a[i].second, b[j].second);
      ++i;
      ++j;
    }
  }
}

inline double plogp_bits(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

}  // namespace detail

/// Total variation distance, computed as half the 1-norm of the mass
/// difference over the union of both outcome lists.
template <class Outcome, Mass M>
M statistical_distance(const Distribution<Outcome, M>& p, const Distribution<Outcome, M>& q) {
  M sum = 0;
  detail::merge_walk(p, q, [&](const M& a, const M& b) { sum += a > b ? a - b : b - a; });
  return sum / 2;
}

/// Kullback-Leibler divergence KL(P || Q) in bits. Returns +infinity when
/// supp P is not contained in supp Q.
template <class Outcome, Mass M>
double kl_divergence(const Distribution<Outcome, M>& p, const Distribution<Outcome, M>& q) {
  double sum = 0;
  bool infinite = false;
  detail::merge_walk(p, q, [&](const M& a, const M& b) {
    if (a == 0) return;
    if (b == 0) {
      infinite = true;
      return;
    }
    const double pa = to_double(a);
    sum += pa * (std::log2(pa) - std::log2(to_double(b)));
  });
  if (infinite) return std::numeric_limits<double>::infinity();
  return std::max(sum, 0.0);
}

/// KL divergence in nats.
template <class Outcome, Mass M>
double kl_divergence_nats(const Distribution<Outcome, M>& p, const Distribution<Outcome, M>& q) {
  return kl_divergence(p, q) * std::numbers::ln2;
}

/// Shannon entropy in bits.
template <class Outcome, Mass M>
double entropy(const Distribution<Outcome, M>& p) {
  double h = 0;
  for (const auto& [o, m] : p.entries()) h += detail::plogp_bits(to_double(m));
  return h;
}

/// Image of `p` under the projection `proj`.
template <class Outcome, Mass M, class Proj>
auto marginal(const Distribution<Outcome, M>& p, Proj proj) {
  using Image = std::decay_t<std::invoke_result_t<Proj, const Outcome&>>;
  DistributionBuilder<Image, M> out;
  for (const auto& [o, m] : p.entries()) out.add(proj(o), m);
  return std::move(out).build();
}

template <class X, class Y, Mass M>
Distribution<X, M> first_marginal(const Distribution<std::pair<X, Y>, M>& joint) {
  return marginal(joint, [](const std::pair<X, Y>& xy) { return xy.first; });
}

template <class X, class Y, Mass M>
Distribution<Y, M> second_marginal(const Distribution<std::pair<X, Y>, M>& joint) {
  return marginal(joint, [](const std::pair<X, Y>& xy) { return xy.second; });
}

/// H(X | Y) = E_{y ~ Y} H(X | Y = y), in bits, for a joint over (x, y).
template <class X, class Y, Mass M>
double conditional_entropy(const Distribution<std::pair<X, Y>, M>& joint) {
  std::map<Y, std::vector<M>> by_y;
  for (const auto& [xy, m] : joint.entries()) {
    if (m > 0) by_y[xy.second].push_back(m);
  }
  double h = 0;
  for (const auto& [y, masses] : by_y) {
    M py = 0;
    for (const auto& m : masses) py += m;
    const double py_d = to_double(py);
    double hy = 0;
    for (const auto& m : masses) hy += detail::plogp_bits(to_double(M(m / py)));
    h += py_d * hy;
  }
  return h;
}

/// I(X : Y) = H(X) - H(X | Y), in bits, for a joint over (x, y).
template <class X, class Y, Mass M>
double mutual_information(const Distribution<std::pair<X, Y>, M>& joint) {
  const double i = entropy(first_marginal(joint)) - conditional_entropy(joint);
  return std::max(i, 0.0);
}

/// I(X : Y | Z) = E_{z ~ Z} I(X : Y | Z = z), in bits, for a joint over (x, y, z).
template <class X, class Y, class Z, Mass M>
double conditional_mutual_information(const Distribution<std::tuple<X, Y, Z>, M>& joint) {
  std::map<Z, std::vector<std::pair<std::pair<X, Y>, M>>> by_z;
  for (const auto& [xyz, m] : joint.entries()) {
    if (m > 0) by_z[std::get<2>(xyz)].emplace_back(std::pair{std::get<0>(xyz), std::get<1>(xyz)}, m);
  }
  double total = 0;
  for (auto& [z, slice] : by_z) {
    M pz = 0;
    for (const auto& e : slice) pz += e.second;
    for (auto& e : slice) e.second = M(e.second / pz);
    total += to_double(pz) *
             mutual_information(Distribution<std::pair<X, Y>, M>::from_entries(std::move(slice)));
  }
  return total;
}

/// Product measure of two independent distributions.
template <class A, class B, Mass M>
Distribution<std::pair<A, B>, M> product(const Distribution<A, M>& p, const Distribution<B, M>& q) {
  std::vector<typename Distribution<std::pair<A, B>, M>::Entry> entries;
  entries.reserve(p.size() * q.size());
  for (const auto& [a, ma] : p.entries()) {
    for (const auto& [b, mb] : q.entries()) entries.emplace_back(std::pair{a, b}, ma * mb);
  }
  detail::absorb_rounding(entries);
  return Distribution<std::pair<A, B>, M>::from_entries(std::move(entries));
}

/// Convex combination sum_k w_k * P_k. Weights must be nonnegative and sum to one.
template <class Outcome, Mass M>
Distribution<Outcome, M> mixture(const std::vector<std::pair<M, Distribution<Outcome, M>>>& parts) {
  DistributionBuilder<Outcome, M> out;
  for (const auto& [w, dist] : parts) {
    if (w < 0) throw DomainError("negative mixture weight");
    for (const auto& [o, m] : dist.entries()) out.add(o, w * m);
  }
  return std::move(out).build();
}

namespace detail {

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

template <class R>
struct unwrap_optional {
  using type = R;
};
template <class T>
struct unwrap_optional<std::optional<T>> {
  using type = T;
};

}  // namespace detail

/// Distribution of g(P) for a deterministic mapping g. If g returns
/// std::optional, an empty result on a support point is an error.
template <class Outcome, Mass M, class Fn>
  requires std::invocable<Fn, const Outcome&>
auto push_forward(const Distribution<Outcome, M>& p, Fn&& g) {
  using R = std::decay_t<std::invoke_result_t<Fn, const Outcome&>>;
  using Image = typename detail::unwrap_optional<R>::type;
  DistributionBuilder<Image, M> out;
  for (const auto& [o, m] : p.entries()) {
    if constexpr (detail::is_optional<R>::value) {
      auto image = g(o);
      if (!image) {
        if (m > 0) throw DomainError("mapping undefined on a support point");
        continue;
      }
      out.add(*image, m);
    } else {
      out.add(g(o), m);
    }
  }
  return std::move(out).build();
}

/// Distribution of g(P, U_{0,1}^r) for a randomized mapping g(outcome, coin)
/// whose internal randomness is `coin_bits` fair coins.
template <class Outcome, Mass M, class Fn>
  requires std::invocable<Fn, const Outcome&, std::uint64_t>
auto push_forward(const Distribution<Outcome, M>& p, unsigned coin_bits, Fn&& g) {
  using R = std::decay_t<std::invoke_result_t<Fn, const Outcome&, std::uint64_t>>;
  using Image = typename detail::unwrap_optional<R>::type;
  if (coin_bits >= 63) throw DomainError("too many coin bits");
  const std::uint64_t coins = std::uint64_t{1} << coin_bits;
  const M coin_mass = mass_from_counts<M>(1, coins);
  DistributionBuilder<Image, M> out;
  for (const auto& [o, m] : p.entries()) {
    const M share = m * coin_mass;
    for (std::uint64_t c = 0; c < coins; ++c) {
      if constexpr (detail::is_optional<R>::value) {
        auto image = g(o, c);
        if (!image) {
          if (m > 0) throw DomainError("mapping undefined on a support point");
          continue;
        }
        out.add(*image, share);
      } else {
        out.add(g(o, c), share);
      }
    }
  }
  return std::move(out).build();
}

/// Push-forward through an explicit lookup table; outcomes missing from the
/// table are an error when they carry mass.
template <class Outcome, class Image, Mass M>
Distribution<Image, M> push_forward(const Distribution<Outcome, M>& p,
                                    const std::map<Outcome, Image>& table) {
  return push_forward(p, [&](const Outcome& o) -> std::optional<Image> {
    auto it = table.find(o);
    if (it == table.end()) return std::nullopt;
    return it->second;
  });
}

/// Converts an exact distribution to its float counterpart.
template <class Outcome>
Distribution<Outcome, double> to_float(const Distribution<Outcome, Rational>& p) {
  std::vector<std::pair<Outcome, double>> entries;
  entries.reserve(p.size());
  double total = 0;
  for (const auto& [o, m] : p.entries()) {
    entries.emplace_back(o, to_double(m));
    total += entries.back().second;
  }
  entries.front().second += 1.0 - total;
  if (entries.front().second < 0) entries.front().second = 0;
  return Distribution<Outcome, double>::from_entries(std::move(entries));
}

// ---------------------------------------------------------------------------
// Product distributions over Sigma^t.

/// Alphabet symbols are 0 .. alphabet_size-1.
using Symbol = std::uint32_t;
/// Mixed-radix index of a word in Sigma^t; coordinate 0 is the most significant digit.
using WordIndex = std::uint64_t;

std::vector<Symbol> decode_word(WordIndex index, std::uint32_t alphabet_size, std::size_t arity);
WordIndex encode_word(std::span<const Symbol> word, std::uint32_t alphabet_size);

/// Constraint on one coordinate: pin it to a value, or exclude a value.
struct CoordinateConstraint {
  enum class Kind { equal, not_equal };
  Kind kind;
  Symbol value;

  static CoordinateConstraint equal(Symbol x) { return {Kind::equal, x}; }
  static CoordinateConstraint not_equal(Symbol x) { return {Kind::not_equal, x}; }
};

/// t independent factors over the common alphabet {0, .., k-1}.
template <Mass M = Rational>
class ProductDistribution {
 public:
  using Factor = Distribution<Symbol, M>;

  ProductDistribution(std::uint32_t alphabet_size, std::vector<Factor> factors)
      : alphabet_size_(alphabet_size), factors_(std::move(factors)) {
    if (alphabet_size_ == 0) throw DomainError("empty alphabet");
    for (const auto& f : factors_) {
      for (const auto& [s, m] : f.entries()) {
        if (s >= alphabet_size_) throw DomainError("factor outcome outside the alphabet");
      }
    }
  }

  /// Uniform distribution on Sigma^t.
  static ProductDistribution uniform(std::uint32_t alphabet_size, std::size_t arity) {
    std::vector<Symbol> sigma(alphabet_size);
    for (Symbol s = 0; s < alphabet_size; ++s) sigma[s] = s;
    return ProductDistribution(alphabet_size,
                               std::vector<Factor>(arity, complab::uniform<M>(sigma)));
  }

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::size_t arity() const { return factors_.size(); }
  const Factor& factor(std::size_t j) const { return factors_.at(j); }
  const std::vector<Factor>& factors() const { return factors_; }

  /// "= x" pins coordinate j to x; "!= x" replaces factor j by the uniform
  /// distribution on Sigma \ {x}.
  ProductDistribution condition(std::size_t j, CoordinateConstraint c) const {
    if (j >= factors_.size()) throw DomainError("coordinate index out of range");
    if (c.value >= alphabet_size_) throw DomainError("constraint value outside the alphabet");
    auto factors = factors_;
    if (c.kind == CoordinateConstraint::Kind::equal) {
      factors[j] = Factor::point(c.value);
    } else {
      if (alphabet_size_ < 2) throw DomainError("empty conditional support");
      std::vector<Symbol> rest;
      for (Symbol s = 0; s < alphabet_size_; ++s) {
        if (s != c.value) rest.push_back(s);
      }
      factors[j] = complab::uniform<M>(rest);
    }
    return ProductDistribution(alphabet_size_, std::move(factors));
  }

  /// Number of words with positive mass.
  std::uint64_t support_size() const {
    std::uint64_t n = 1;
    for (const auto& f : factors_) {
      const std::uint64_t s = f.support().size();
      if (s != 0 && n > std::numeric_limits<std::uint64_t>::max() / s) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      n *= s;
    }
    return n;
  }

  /// True when every factor is uniform on its own support, so every word in the
  /// joint support carries the same mass.
  bool uniform_on_support() const {
    for (const auto& f : factors_) {
      std::optional<M> first;
      for (const auto& [s, m] : f.entries()) {
        if (m == 0) continue;
        if (!first) {
          first = m;
        } else if (*first != m) {
          return false;
        }
      }
    }
    return true;
  }

  /// Calls fn(word_index, mass) for every word with positive mass, in
  /// increasing index order.
  template <class Fn>
  void for_each_word(Fn&& fn) const {
    const std::size_t t = factors_.size();
    std::vector<std::vector<std::pair<Symbol, M>>> supports(t);
    for (std::size_t j = 0; j < t; ++j) {
      for (const auto& [s, m] : factors_[j].entries()) {
        if (m > 0) supports[j].emplace_back(s, m);
      }
    }
    std::vector<std::size_t> pos(t, 0);
    while (true) {
      WordIndex index = 0;
      M mass = 1;
      for (std::size_t j = 0; j < t; ++j) {
        index = index * alphabet_size_ + supports[j][pos[j]].first;
        mass *= supports[j][pos[j]].second;
      }
      fn(index, mass);
      std::size_t j = t;
      while (j > 0) {
        --j;
        if (++pos[j] < supports[j].size()) break;
        pos[j] = 0;
        if (j == 0) return;
      }
      if (t == 0) return;
    }
  }

  /// The joint distribution over word indices.
  Distribution<WordIndex, M> joint() const {
    std::vector<std::pair<WordIndex, M>> entries;
    for_each_word([&](WordIndex w, const M& m) { entries.emplace_back(w, m); });
    detail::absorb_rounding(entries);
    return Distribution<WordIndex, M>::from_entries(std::move(entries));
  }

 private:
  std::uint32_t alphabet_size_;
  std::vector<Factor> factors_;
};

}  // namespace complab
