#pragma once

// Hand-rolled generators and brute-force oracles shared by the unit tests.
// The oracles deliberately avoid the library's own fast paths: statistical
// distance is a maximum over events, KL and information are plain sums with
// natural logs, and output distributions are enumerated word by word.

#include "complab/compressive_map.hpp"
#include "complab/distribution.hpp"
#include "complab/random.hpp"

#include <cmath>
#include <map>
#include <set>
#include <vector>

namespace complab::testing {

/// Random exact distribution over a subset of {0..universe-1} with small integer weights.
inline Distribution<std::uint64_t> random_distribution(Rng& rng, std::uint64_t universe,
                                                       std::uint64_t max_weight = 6) {
  std::vector<std::uint64_t> weights(universe);
  std::uint64_t total = 0;
  for (auto& w : weights) {
    w = rng.below(max_weight + 1);
    total += w;
  }
  if (total == 0) {
    weights[rng.below(universe)] = 1;
    total = 1;
  }
  std::vector<std::pair<std::uint64_t, Rational>> entries;
  for (std::uint64_t o = 0; o < universe; ++o) {
    if (weights[o] > 0) entries.emplace_back(o, Rational(Integer(weights[o]), Integer(total)));
  }
  return Distribution<std::uint64_t>::from_entries(std::move(entries));
}

/// Random factor over {0..k-1} with full support.
template <Mass M>
Distribution<Symbol, M> random_factor(Rng& rng, std::uint32_t k) {
  std::vector<std::uint64_t> w(k);
  std::uint64_t total = 0;
  for (auto& x : w) total += (x = 1 + rng.below(5));
  std::vector<std::pair<Symbol, M>> entries;
  for (Symbol s = 0; s < k; ++s) entries.emplace_back(s, mass_from_counts<M>(w[s], total));
  detail::absorb_rounding(entries);
  return Distribution<Symbol, M>::from_entries(std::move(entries));
}

template <Mass M>
ProductDistribution<M> random_product(Rng& rng, std::uint32_t k, std::size_t t) {
  std::vector<Distribution<Symbol, M>> factors;
  for (std::size_t j = 0; j < t; ++j) factors.push_back(random_factor<M>(rng, k));
  return ProductDistribution<M>(k, std::move(factors));
}

/// max over events T of |P(T) - Q(T)|, by enumerating every T in the union of supports.
template <class Outcome>
Rational sd_by_events(const Distribution<Outcome>& p, const Distribution<Outcome>& q) {
  std::set<Outcome> universe;
  for (const auto& [o, m] : p.entries()) universe.insert(o);
  for (const auto& [o, m] : q.entries()) universe.insert(o);
  const std::vector<Outcome> all(universe.begin(), universe.end());
  Rational best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << all.size()); ++mask) {
    Rational gap = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if ((mask >> i) & 1U) gap += p.mass(all[i]) - q.mass(all[i]);
    }
    if (gap < 0) gap = -gap;
    if (gap > best) best = gap;
  }
  return best;
}

/// sum p ln(p/q) / ln 2 with a lookup per outcome of p.
template <class Outcome, Mass M>
double kl_bits_direct(const Distribution<Outcome, M>& p, const Distribution<Outcome, M>& q) {
  double nats = 0;
  for (const auto& [o, m] : p.entries()) {
    const double a = to_double(m);
    if (a == 0) continue;
    const double b = to_double(q.mass(o));
    if (b == 0) return INFINITY;
    nats += a * std::log(a / b);
  }
  return nats / std::log(2.0);
}

/// sum p(x,y) log2(p(x,y) / (p(x) p(y))).
template <class X, class Y, Mass M>
double mutual_information_direct(const Distribution<std::pair<X, Y>, M>& joint) {
  std::map<X, double> px;
  std::map<Y, double> py;
  for (const auto& [xy, m] : joint.entries()) {
    px[xy.first] += to_double(m);
    py[xy.second] += to_double(m);
  }
  double info = 0;
  for (const auto& [xy, m] : joint.entries()) {
    const double p = to_double(m);
    if (p > 0) info += p * std::log2(p / (px[xy.first] * py[xy.second]));
  }
  return info;
}

/// Output distribution of f under X by decoding every word and multiplying the
/// factor masses coordinate by coordinate.
template <Mass M>
Distribution<Output, M> brute_output(const CompressiveMap& f, const ProductDistribution<M>& x) {
  std::map<Output, M> acc;
  const std::uint64_t words = f.word_count();
  const M coin_mass = mass_from_counts<M>(1, f.coin_count());
  for (WordIndex w = 0; w < words; ++w) {
    const auto word = decode_word(w, f.alphabet_size(), f.arity());
    M mass = 1;
    for (std::size_t j = 0; j < word.size(); ++j) mass *= x.factor(j).mass(word[j]);
    if (mass == 0) continue;
    for (std::uint64_t c = 0; c < f.coin_count(); ++c) acc[f(w, c)] += mass * coin_mass;
  }
  std::vector<std::pair<Output, M>> entries(acc.begin(), acc.end());
  detail::absorb_rounding(entries);
  return Distribution<Output, M>::from_entries(std::move(entries));
}

/// Law of the whole word X under a product distribution, as word indices.
template <Mass M>
Distribution<WordIndex, M> word_distribution(const ProductDistribution<M>& x) {
  std::vector<std::pair<WordIndex, M>> entries;
  std::uint64_t words = 1;
  for (std::size_t j = 0; j < x.arity(); ++j) words *= x.alphabet_size();
  for (WordIndex w = 0; w < words; ++w) {
    const auto word = decode_word(w, x.alphabet_size(), x.arity());
    M mass = 1;
    for (std::size_t j = 0; j < word.size(); ++j) mass *= x.factor(j).mass(word[j]);
    if (mass != 0) entries.emplace_back(w, mass);
  }
  detail::absorb_rounding(entries);
  return Distribution<WordIndex, M>::from_entries(std::move(entries));
}

/// f(b) = b_0 (the first coordinate) on {0,1}^t.
inline CompressiveMap dictator(std::uint32_t t) {
  return CompressiveMap::tabulate(2, t, 1, 0, [](std::span<const Symbol> b, std::uint64_t) {
    return Output{b[0]};
  });
}

inline CompressiveMap parity_map(std::uint32_t t) {
  return CompressiveMap::tabulate(2, t, 1, 0, [](std::span<const Symbol> b, std::uint64_t) {
    Output y = 0;
    for (Symbol s : b) y ^= s;
    return y;
  });
}

inline CompressiveMap constant_map(std::uint32_t k, std::uint32_t t, std::uint32_t m) {
  return CompressiveMap::tabulate(k, t, m, 0, [](std::span<const Symbol>, std::uint64_t) { return Output{0}; });
}

/// f(a) = a_0 over an alphabet of size k, written on ceil(log2 k) bits.
inline CompressiveMap identity_coordinate(std::uint32_t k) {
  std::uint32_t m = 0;
  while ((1U << m) < k) ++m;
  return CompressiveMap::tabulate(k, 1, m, 0, [](std::span<const Symbol> a, std::uint64_t) {
    return Output{a[0]};
  });
}

}  // namespace complab::testing
