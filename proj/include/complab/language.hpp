#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace complab {

/// A string in {0,1}^n stored as its binary value; for a fixed n the numeric
/// order coincides with the lexicographic order of the strings.
using Instance = std::uint32_t;

/// An instance together with its length, for APIs that must reject length mismatches.
struct BitString {
  Instance value = 0;
  unsigned length = 0;

  static BitString parse(std::string_view bits);
  std::string to_string() const;
  friend bool operator==(const BitString&, const BitString&) = default;
};

inline constexpr unsigned kMaxInputLength = 24;

/// Membership table of a language restricted to one input length.
class ToyLanguage {
 public:
  ToyLanguage(unsigned input_length, std::vector<bool> membership);

  static ToyLanguage from_yes_instances(unsigned input_length, const std::vector<Instance>& yes);
  static ToyLanguage empty(unsigned input_length);

  unsigned input_length() const { return n_; }
  std::uint64_t universe_size() const { return membership_.size(); }
  bool contains(Instance x) const { return membership_.at(x); }
  const std::vector<bool>& membership() const { return membership_; }

  std::vector<Instance> yes_instances() const;
  std::vector<Instance> no_instances() const;
  ToyLanguage complement() const;

  friend bool operator==(const ToyLanguage&, const ToyLanguage&) = default;

 private:
  unsigned n_;
  std::vector<bool> membership_;
};

/// Each string independently a yes-instance with probability 1/2.
ToyLanguage random_language(unsigned input_length, std::uint64_t seed);

/// The language whose membership table is the binary expansion of `code`
/// (bit x of code decides string x). Used to enumerate every language at small n.
ToyLanguage language_from_code(unsigned input_length, std::uint64_t code);

/// Named languages: "empty", "full", "single-yes" (only 1^n), "single-no"
/// (all but 0^n), "parity" (odd weight), "half" (leading bit 1).
ToyLanguage builtin_language(std::string_view name, unsigned input_length);

/// Zero-padded lowercase hex of an n-bit instance.
std::string instance_to_hex(Instance x, unsigned input_length);
Instance instance_from_hex(std::string_view hex, unsigned input_length);
/// '0'/'1' string of an n-bit instance.
std::string instance_to_bits(Instance x, unsigned input_length);

}  // namespace complab
