#pragma once

// Compressions whose inputs are sets of at most t instances, and the subset
// distributions U_{2^e} they are evaluated on.

#include "complab/compressive_map.hpp"
#include "complab/distribution.hpp"
#include "complab/language.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace complab {

/// A sorted, duplicate-free set of instances.
using InstanceSet = std::vector<Instance>;

/// Sorts and deduplicates; throws if duplicates were present.
InstanceSet canonical_set(std::vector<Instance> items);

/// A randomized map on sets x of at most t n-bit instances, with r fair coins,
/// to {0,1}^m, together with the target language L' on outputs and the
/// declared soundness/completeness errors.
class SetEncodedCompression {
 public:
  /// evaluator(sorted set, coin) -> output bits. It only ever sees canonical sets.
  using Evaluator = std::function<Output(std::span<const Instance>, std::uint64_t)>;
  using TargetPredicate = std::function<bool(Output)>;

  struct Shape {
    unsigned input_length = 0;
    unsigned arity = 0;
    unsigned output_bits = 1;
    unsigned coin_bits = 0;
  };

  SetEncodedCompression(Shape shape, Rational soundness_error, Rational completeness_error,
                        Evaluator evaluator, TargetPredicate target, std::string name);

  unsigned input_length() const { return shape_.input_length; }
  unsigned arity() const { return shape_.arity; }
  unsigned output_bits() const { return shape_.output_bits; }
  unsigned coin_bits() const { return shape_.coin_bits; }
  std::uint64_t coin_count() const { return std::uint64_t{1} << shape_.coin_bits; }
  const Rational& soundness_error() const { return soundness_error_; }
  const Rational& completeness_error() const { return completeness_error_; }
  const std::string& name() const { return name_; }

  /// epsilon = m / t.
  double compression_ratio() const;

  /// Evaluates on a canonical set (sorted, distinct, size <= t).
  Output evaluate_sorted(std::span<const Instance> set, std::uint64_t coin) const;
  /// Evaluates on any presentation of a set; the order of `set` does not matter.
  Output evaluate(std::vector<Instance> set, std::uint64_t coin) const;

  /// evaluate_sorted without the argument checks, for enumeration loops that
  /// only produce canonical sets.
  Output evaluate_unchecked(std::span<const Instance> set, std::uint64_t coin) const {
    return evaluator_(set, coin);
  }

  bool in_target(Output y) const { return target_(y); }

  /// Output distribution on a single set, over the internal coins.
  Distribution<Output> output_distribution(std::vector<Instance> set) const;

 private:
  Shape shape_;
  Rational soundness_error_;
  Rational completeness_error_;
  Evaluator evaluator_;
  TargetPredicate target_;
  std::string name_;
};

/// A(x) = 1 iff x contains a yes-instance; one output bit, L' = {1}, no coins.
SetEncodedCompression ideal_or_compression(const ToyLanguage& language, unsigned arity);

/// The ideal OR with its output flipped with probability e_s on all-no sets
/// and e_c on sets containing a yes-instance. Both errors must be multiples
/// of 2^-coin_bits.
SetEncodedCompression noisy_or_compression(const ToyLanguage& language, unsigned arity,
                                           const Rational& soundness_error,
                                           const Rational& completeness_error, unsigned coin_bits);

/// U_{2^e}, and the two laws with v forced out of / into every sampled subset.
enum class SubsetMode { all, without, with };

Distribution<InstanceSet> subset_distribution(std::span<const Instance> e, SubsetMode mode,
                                              std::optional<Instance> v = std::nullopt);

/// Push-forward of a distribution over sets through A (and its coins).
Distribution<Output> output_distribution(const SetEncodedCompression& a,
                                         const Distribution<InstanceSet>& sets);

/// Integer tally of outputs; every counted (set, coin) pair has equal weight.
struct OutputCounts {
  std::map<Output, std::uint64_t> counts;
  std::uint64_t total = 0;

  Distribution<Output> to_distribution() const;
};

/// Exact statistical distance of two tallies.
Rational statistical_distance(const OutputCounts& p, const OutputCounts& q);

/// A(subset_distribution(e, mode, v)) computed by streaming over subsets
/// without materializing them.
OutputCounts subset_output_counts(const SetEncodedCompression& a, std::span<const Instance> e,
                                  SubsetMode mode, std::optional<Instance> v = std::nullopt);

/// d(A(U_{2^e} \ {v}), A(U_{2^e} u {v})).
Rational selector_distance(const SetEncodedCompression& a, std::span<const Instance> e, Instance v);

/// f(b) = A(g(b)) where g(b) keeps the i-th smallest element of e iff b_i = 1.
/// Under uniform X, f(X|_{i<-0}) = A(U_{2^e} \ {v_i}) and f(X|_{i<-1}) = A(U_{2^e} u {v_i}).
CompressiveMap cube_encoding(const SetEncodedCompression& a, std::span<const Instance> e);

/// f(a_1..a_t) = A({blocks[0][a_1], ..., blocks[t-1][a_t]}), blocks sorted and of equal size |Sigma|.
CompressiveMap block_encoding(const SetEncodedCompression& a,
                              const std::vector<InstanceSet>& blocks);

}  // namespace complab
