#pragma once

// Compressions for symmetric Boolean functions of |x n L| and their
// transformation into relaxed OR-compressions.

#include "complab/set_compression.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace complab {

/// f : {0, .., t} -> {0, 1}.
class SymmetricFunction {
 public:
  explicit SymmetricFunction(std::vector<bool> values);

  /// "0111" -> f(0)=0, f(1)=f(2)=f(3)=1.
  static SymmetricFunction from_bits(std::string_view bits);
  /// "or", "and", "majority" (f(i)=1 iff i > t/2), "parity" (i odd).
  static SymmetricFunction builtin(std::string_view name, unsigned t);

  unsigned arity() const { return static_cast<unsigned>(values_.size() - 1); }
  bool operator()(std::size_t i) const { return values_.at(i); }
  const std::vector<bool>& values() const { return values_; }
  bool is_constant() const;
  std::string to_bits() const;

  friend bool operator==(const SymmetricFunction&, const SymmetricFunction&) = default;

 private:
  std::vector<bool> values_;
};

/// The four ways to read an f-compression: f, 1-f, f(t-i), 1-f(t-i).
enum class ViewKind { identity, negated, reversed, negated_reversed };

std::string to_string(ViewKind view);

/// f read through `view`.
SymmetricFunction view_function(const SymmetricFunction& f, ViewKind view);

struct PivotView {
  ViewKind view = ViewKind::identity;
  /// f'(pivot) = 0 and f'(pivot + 1) = 1 for the viewed function f'.
  std::size_t pivot = 0;
  /// The view reads the compression as one for the complement of L.
  bool source_complemented = false;
  /// The view reads the compression as one into the complement of L'.
  bool target_complemented = false;
};

/// First view in the order f, 1-f, f(t-i), 1-f(t-i) having a pivot i <= t/2,
/// with the smallest such i. Throws for constant f.
PivotView find_pivot_view(const SymmetricFunction& f);

/// A(x) = f(|x n L|) with one output bit and L' = {1}.
SetEncodedCompression ideal_f_compression(const ToyLanguage& language, const SymmetricFunction& f);

/// Instances of the view's source language (yes) and of its complement (no).
struct InstancePool {
  std::vector<Instance> source_yes;
  std::vector<Instance> source_no;
};

/// The language the view's relaxed OR-compression is for: L or its complement.
ToyLanguage source_language(const ToyLanguage& language, const PivotView& view);

InstancePool make_pool(const ToyLanguage& language, const PivotView& view);

struct RelaxedOrTransform {
  PivotView view;
  /// t' = t - i.
  unsigned arity = 0;
  SetEncodedCompression compression;
  /// m / t'.
  double compression_ratio = 0;
};

/// A'(x) = A(x u P u Q) on sets of size at most t - i, where P holds i source
/// yes-instances not in x, and, for the reversed views, Q fills the set up to
/// exactly t with source no-instances not in x. The target is complemented for
/// the negated views. Then |x n L_src| = 0 puts A'(x) outside the target and
/// |x n L_src| = 1 puts it inside.
RelaxedOrTransform transform_to_relaxed_or(const SetEncodedCompression& a,
                                           const SymmetricFunction& f, const InstancePool& pool);

}  // namespace complab
