#include "complab/compressive_map.hpp"

#include "complab/budget.hpp"
#include "complab/random.hpp"

#include <string>

namespace complab {

std::uint64_t CompressiveMap::row_count(std::uint32_t alphabet_size, std::uint32_t arity,
                                        std::uint32_t randomness_bits) {
  if (alphabet_size == 0) throw DomainError("empty alphabet");
  if (randomness_bits >= 63) throw BudgetExceeded("randomness bits exceed 62");
  const std::uint64_t rows =
      saturating_mul(saturating_pow(alphabet_size, arity), std::uint64_t{1} << randomness_bits);
  check_budget(rows, "compressive map table");
  return rows;
}

CompressiveMap::CompressiveMap(std::uint32_t alphabet_size, std::uint32_t arity,
                               std::uint32_t output_bits, std::uint32_t randomness_bits,
                               std::vector<Output> table)
    : alphabet_size_(alphabet_size),
      arity_(arity),
      output_bits_(output_bits),
      randomness_bits_(randomness_bits),
      table_(std::move(table)) {
  if (output_bits_ > 63) throw DomainError("at most 63 output bits are supported");
  const std::uint64_t rows = row_count(alphabet_size_, arity_, randomness_bits_);
  if (table_.size() != rows) {
    throw DomainError("table has " + std::to_string(table_.size()) + " rows, expected " +
                      std::to_string(rows));
  }
  const Output limit = Output{1} << output_bits_;
  for (Output y : table_) {
    if (y >= limit) throw DomainError("table entry does not fit in the output bits");
  }
}

double CompressiveMap::compression_ratio() const {
  if (arity_ == 0) throw DomainError("compression ratio of a nullary map");
  return static_cast<double>(output_bits_) / arity_;
}

CompressiveMap random_compressive_map(std::uint32_t arity, std::uint32_t output_bits,
                                      std::uint32_t randomness_bits, std::uint64_t seed,
                                      std::uint32_t alphabet_size) {
  if (output_bits > 63) throw DomainError("at most 63 output bits are supported");
  const std::uint64_t rows = CompressiveMap::row_count(alphabet_size, arity, randomness_bits);
  Rng rng(seed);
  std::vector<Output> table(rows);
  for (auto& y : table) y = rng.bits(output_bits);
  return CompressiveMap(alphabet_size, arity, output_bits, randomness_bits, std::move(table));
}

namespace {

void check_compatible(const CompressiveMap& f, std::uint32_t alphabet_size, std::size_t arity) {
  if (alphabet_size != f.alphabet_size() || arity != f.arity()) {
    throw DomainError("input distribution does not match the map's alphabet and arity");
  }
}

template <Mass M>
void check_enumeration(const CompressiveMap& f, const ProductDistribution<M>& x) {
  check_compatible(f, x.alphabet_size(), x.arity());
  check_budget(saturating_mul(x.support_size(), f.coin_count()), "output distribution");
}

}  // namespace

template <Mass M>
Distribution<Output, M> output_distribution(const CompressiveMap& f, const ProductDistribution<M>& x) {
  check_enumeration(f, x);
  const std::uint64_t coins = f.coin_count();
  if (x.uniform_on_support()) {
    // Every (word, coin) row in the support has the same weight, so integer
    // tallies suffice.
    std::uint64_t total = 0;
    std::vector<std::pair<Output, M>> entries;
    if (f.output_bits() <= 16) {
      std::vector<std::uint64_t> counts(std::size_t{1} << f.output_bits(), 0);
      x.for_each_word([&](WordIndex w, const M&) {
        for (std::uint64_t c = 0; c < coins; ++c) ++counts[f(w, c)];
        total += coins;
      });
      for (Output y = 0; y < counts.size(); ++y) {
        if (counts[y] > 0) entries.emplace_back(y, mass_from_counts<M>(counts[y], total));
      }
    } else {
      std::map<Output, std::uint64_t> counts;
      x.for_each_word([&](WordIndex w, const M&) {
        for (std::uint64_t c = 0; c < coins; ++c) ++counts[f(w, c)];
        total += coins;
      });
      for (const auto& [y, n] : counts) entries.emplace_back(y, mass_from_counts<M>(n, total));
    }
    detail::absorb_rounding(entries);
    return Distribution<Output, M>::from_entries(std::move(entries));
  }
  const M coin_mass = mass_from_counts<M>(1, coins);
  std::map<Output, M> acc;
  x.for_each_word([&](WordIndex w, const M& m) {
    const M share = m * coin_mass;
    for (std::uint64_t c = 0; c < coins; ++c) acc[f(w, c)] += share;
  });
  std::vector<std::pair<Output, M>> entries(acc.begin(), acc.end());
  detail::absorb_rounding(entries);
  return Distribution<Output, M>::from_entries(std::move(entries));
}

template <Mass M>
Distribution<std::pair<Output, WordIndex>, M> output_input_joint(const CompressiveMap& f,
                                                                 const ProductDistribution<M>& x) {
  check_enumeration(f, x);
  const std::uint64_t coins = f.coin_count();
  std::vector<std::pair<std::pair<Output, WordIndex>, M>> entries;
  std::map<Output, std::uint64_t> per_word;
  x.for_each_word([&](WordIndex w, const M& m) {
    per_word.clear();
    for (std::uint64_t c = 0; c < coins; ++c) ++per_word[f(w, c)];
    for (const auto& [y, n] : per_word) {
      entries.emplace_back(std::pair{y, w}, m * mass_from_counts<M>(n, coins));
    }
  });
  detail::absorb_rounding(entries);
  return Distribution<std::pair<Output, WordIndex>, M>::from_entries(std::move(entries));
}

template Distribution<Output, Rational> output_distribution(const CompressiveMap&,
                                                            const ProductDistribution<Rational>&);
template Distribution<Output, double> output_distribution(const CompressiveMap&,
                                                          const ProductDistribution<double>&);
template Distribution<std::pair<Output, WordIndex>, Rational> output_input_joint(
    const CompressiveMap&, const ProductDistribution<Rational>&);
template Distribution<std::pair<Output, WordIndex>, double> output_input_joint(
    const CompressiveMap&, const ProductDistribution<double>&);

std::string output_to_bits(Output value, unsigned output_bits) {
  std::string bits(output_bits, '0');
  for (unsigned i = 0; i < output_bits; ++i) {
    if ((value >> (output_bits - 1 - i)) & 1U) bits[i] = '1';
  }
  return bits;
}

}  // namespace complab
