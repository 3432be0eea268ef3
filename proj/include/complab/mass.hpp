#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <string>

namespace complab {

/// Arbitrary-precision rational; expression templates are disabled so that
/// `auto` and generic code behave like a plain value type.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Probability mass representations: exact rationals or 64-bit floats.
template <class M>
concept Mass = std::same_as<M, Rational> || std::same_as<M, double>;

template <Mass M>
inline constexpr bool is_exact_v = std::same_as<M, Rational>;

/// Total-mass tolerance for float distributions.
inline constexpr double kFloatMassTolerance = 1e-12;
/// Comparison tolerance for float identities and for any bound that involves a logarithm.
inline constexpr double kFloatTolerance = 1e-9;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Exact conversion of a finite double into a rational (doubles are dyadic).
inline Rational exact_rational(double x) { return Rational(x); }

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(Integer(num), Integer(den));
}

/// 1 / 2^k as an exact rational.
inline Rational dyadic(std::uint64_t num, unsigned k) {
  Integer den = 1;
  den <<= k;
  return Rational(Integer(num), den);
}

/// Parses "p/q", "p" or a decimal such as "0.125" into an exact rational.
Rational parse_rational(const std::string& text);

/// "p/q" (or "p" when the denominator is one).
std::string to_string(const Rational& r);

template <Mass M>
M mass_from_counts(std::uint64_t count, std::uint64_t total) {
  if constexpr (is_exact_v<M>) {
    return Rational(Integer(count), Integer(total));
  } else {
    return static_cast<double>(count) / static_cast<double>(total);
  }
}

}  // namespace complab
