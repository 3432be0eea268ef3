#pragma once

#include "complab/distribution.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace complab {

/// An output string in {0,1}^m, packed into the low m bits (first bit most significant).
using Output = std::uint64_t;

/// An explicitly tabulated, possibly randomized map Sigma^t x {0,1}^r -> {0,1}^m.
///
/// Rows are stored row-major: row = word_index * 2^r + coin.
class CompressiveMap {
 public:
  CompressiveMap(std::uint32_t alphabet_size, std::uint32_t arity, std::uint32_t output_bits,
                 std::uint32_t randomness_bits, std::vector<Output> table);

  /// Builds the table by evaluating fn(word, coin) on every row.
  template <class Fn>
  static CompressiveMap tabulate(std::uint32_t alphabet_size, std::uint32_t arity,
                                 std::uint32_t output_bits, std::uint32_t randomness_bits, Fn&& fn) {
    const std::uint64_t rows = row_count(alphabet_size, arity, randomness_bits);
    std::vector<Output> table;
    table.reserve(rows);
    const std::uint64_t coins = std::uint64_t{1} << randomness_bits;
    std::vector<Symbol> word(arity, 0);
    for (std::uint64_t row = 0; row < rows; row += coins) {
      for (std::uint64_t c = 0; c < coins; ++c) table.push_back(fn(std::span<const Symbol>(word), c));
      for (std::size_t j = arity; j > 0; --j) {
        if (++word[j - 1] < alphabet_size) break;
        word[j - 1] = 0;
      }
    }
    return CompressiveMap(alphabet_size, arity, output_bits, randomness_bits, std::move(table));
  }

  /// k^t * 2^r, checked against the enumeration budget.
  static std::uint64_t row_count(std::uint32_t alphabet_size, std::uint32_t arity,
                                 std::uint32_t randomness_bits);

  std::uint32_t alphabet_size() const { return alphabet_size_; }
  std::uint32_t arity() const { return arity_; }
  std::uint32_t output_bits() const { return output_bits_; }
  std::uint32_t randomness_bits() const { return randomness_bits_; }
  bool deterministic() const { return randomness_bits_ == 0; }

  /// epsilon = m / t.
  double compression_ratio() const;

  std::uint64_t word_count() const { return table_.size() >> randomness_bits_; }
  std::uint64_t coin_count() const { return std::uint64_t{1} << randomness_bits_; }

  Output operator()(WordIndex word, std::uint64_t coin) const {
    return table_[(word << randomness_bits_) | coin];
  }

  const std::vector<Output>& table() const { return table_; }

  friend bool operator==(const CompressiveMap&, const CompressiveMap&) = default;

 private:
  std::uint32_t alphabet_size_;
  std::uint32_t arity_;
  std::uint32_t output_bits_;
  std::uint32_t randomness_bits_;
  std::vector<Output> table_;
};

/// Uniformly random table; a deterministic function of `seed`.
CompressiveMap random_compressive_map(std::uint32_t arity, std::uint32_t output_bits,
                                      std::uint32_t randomness_bits, std::uint64_t seed,
                                      std::uint32_t alphabet_size = 2);

/// Exact distribution of f(X), enumerating supp X and all 2^r coin strings.
template <Mass M>
Distribution<Output, M> output_distribution(const CompressiveMap& f, const ProductDistribution<M>& x);

/// Joint distribution of (f(X), X) over (output, word index).
template <Mass M>
Distribution<std::pair<Output, WordIndex>, M> output_input_joint(const CompressiveMap& f,
                                                                 const ProductDistribution<M>& x);

extern template Distribution<Output, Rational> output_distribution(const CompressiveMap&,
                                                                   const ProductDistribution<Rational>&);
extern template Distribution<Output, double> output_distribution(const CompressiveMap&,
                                                                 const ProductDistribution<double>&);
extern template Distribution<std::pair<Output, WordIndex>, Rational> output_input_joint(
    const CompressiveMap&, const ProductDistribution<Rational>&);
extern template Distribution<std::pair<Output, WordIndex>, double> output_input_joint(
    const CompressiveMap&, const ProductDistribution<double>&);

/// Output bits as a '0'/'1' string of length m.
std::string output_to_bits(Output value, unsigned output_bits);

}  // namespace complab
