#include "complab/mass.hpp"

#include "complab/error.hpp"

#include <cctype>

namespace complab {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty number");
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      const Integer num(text.substr(0, slash));
      const Integer den(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      if (digits.empty() || digits == "-") throw DomainError("malformed number '" + text + "'");
      Integer den = 1;
      for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      return Rational(Integer(digits), den);
    }
    return Rational(Integer(text));
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const DomainError*>(&e) != nullptr) throw;
    throw DomainError("malformed number '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace complab
