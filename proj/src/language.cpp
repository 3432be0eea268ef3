#include "complab/language.hpp"

#include "complab/error.hpp"
#include "complab/random.hpp"

#include <bit>
#include <string>

namespace complab {

BitString BitString::parse(std::string_view bits) {
  if (bits.size() > kMaxInputLength) throw DomainError("bit string too long");
  BitString out;
  out.length = static_cast<unsigned>(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bit string may only contain 0 and 1");
    out.value = (out.value << 1) | static_cast<Instance>(c == '1');
  }
  return out;
}

std::string BitString::to_string() const { return instance_to_bits(value, length); }

ToyLanguage::ToyLanguage(unsigned input_length, std::vector<bool> membership)
    : n_(input_length), membership_(std::move(membership)) {
  if (n_ > kMaxInputLength) throw DomainError("input length above 24 is not supported");
  if (membership_.size() != (std::uint64_t{1} << n_)) {
    throw DomainError("membership table must have 2^n entries");
  }
}

ToyLanguage ToyLanguage::from_yes_instances(unsigned input_length, const std::vector<Instance>& yes) {
  if (input_length > kMaxInputLength) throw DomainError("input length above 24 is not supported");
  std::vector<bool> membership(std::size_t{1} << input_length, false);
  for (Instance x : yes) {
    if (x >= membership.size()) throw DomainError("instance longer than the input length");
    membership[x] = true;
  }
  return ToyLanguage(input_length, std::move(membership));
}

ToyLanguage ToyLanguage::empty(unsigned input_length) { return from_yes_instances(input_length, {}); }

std::vector<Instance> ToyLanguage::yes_instances() const {
  std::vector<Instance> out;
  for (Instance x = 0; x < membership_.size(); ++x) {
    if (membership_[x]) out.push_back(x);
  }
  return out;
}

std::vector<Instance> ToyLanguage::no_instances() const {
  std::vector<Instance> out;
  for (Instance x = 0; x < membership_.size(); ++x) {
    if (!membership_[x]) out.push_back(x);
  }
  return out;
}

ToyLanguage ToyLanguage::complement() const {
  std::vector<bool> flipped(membership_.size());
  for (std::size_t x = 0; x < membership_.size(); ++x) flipped[x] = !membership_[x];
  return ToyLanguage(n_, std::move(flipped));
}

ToyLanguage random_language(unsigned input_length, std::uint64_t seed) {
  if (input_length > kMaxInputLength) throw DomainError("input length above 24 is not supported");
  Rng rng(seed);
  std::vector<bool> membership(std::size_t{1} << input_length);
  for (std::size_t x = 0; x < membership.size(); ++x) membership[x] = rng.coin();
  return ToyLanguage(input_length, std::move(membership));
}

ToyLanguage language_from_code(unsigned input_length, std::uint64_t code) {
  if (input_length > 6) throw DomainError("language codes cover input lengths up to 6");
  std::vector<bool> membership(std::size_t{1} << input_length);
  for (std::size_t x = 0; x < membership.size(); ++x) membership[x] = ((code >> x) & 1U) != 0;
  return ToyLanguage(input_length, std::move(membership));
}

ToyLanguage builtin_language(std::string_view name, unsigned input_length) {
  if (input_length > kMaxInputLength) throw DomainError("input length above 24 is not supported");
  const std::size_t size = std::size_t{1} << input_length;
  std::vector<bool> membership(size, false);
  const Instance all_ones = static_cast<Instance>(size - 1);
  for (Instance x = 0; x < size; ++x) {
    if (name == "empty") {
      membership[x] = false;
    } else if (name == "full") {
      membership[x] = true;
    } else if (name == "single-yes") {
      membership[x] = x == all_ones;
    } else if (name == "single-no") {
      membership[x] = x != 0;
    } else if (name == "parity") {
      membership[x] = (std::popcount(x) & 1) != 0;
    } else if (name == "half") {
      membership[x] = input_length > 0 && ((x >> (input_length - 1)) & 1U) != 0;
    } else {
      throw DomainError("unknown builtin language '" + std::string(name) + "'");
    }
  }
  return ToyLanguage(input_length, std::move(membership));
}

std::string instance_to_hex(Instance x, unsigned input_length) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const unsigned digits = input_length == 0 ? 1 : (input_length + 3) / 4;
  std::string out(digits, '0');
  for (unsigned i = 0; i < digits; ++i) out[digits - 1 - i] = kDigits[(x >> (4 * i)) & 0xF];
  return out;
}

Instance instance_from_hex(std::string_view hex, unsigned input_length) {
  if (hex.empty() || hex.size() > 8) throw DomainError("malformed hex instance");
  Instance x = 0;
  for (char c : hex) {
    unsigned d = 0;
    if (c >= '0' && c <= '9') {
      d = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      d = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      d = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw DomainError("malformed hex instance '" + std::string(hex) + "'");
    }
    x = (x << 4) | d;
  }
  if (input_length < 32 && (std::uint64_t{x} >> input_length) != 0) {
    throw DomainError("hex instance longer than the input length");
  }
  return x;
}

std::string instance_to_bits(Instance x, unsigned input_length) {
  std::string bits(input_length, '0');
  for (unsigned i = 0; i < input_length; ++i) {
    if ((x >> (input_length - 1 - i)) & 1U) bits[i] = '1';
  }
  return bits;
}

}  // namespace complab
