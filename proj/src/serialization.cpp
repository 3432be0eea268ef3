#include "complab/serialization.hpp"

#include "complab/error.hpp"

#include <openssl/evp.h>

#include <limits>

namespace complab {

std::string base64_encode(const std::vector<std::uint8_t>& bytes) {
  if (bytes.empty()) return {};
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.empty()) return {};
  if (text.size() % 4 != 0) throw DomainError("base64 text length is not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw DomainError("malformed base64 text");
  // EVP_DecodeBlock keeps the bytes that encode '=' padding.
  std::size_t len = static_cast<std::size_t>(n);
  if (text.back() == '=') --len;
  if (text.size() >= 2 && text[text.size() - 2] == '=') --len;
  out.resize(len);
  return out;
}

namespace {

Json integer_to_json(const Integer& z) {
  if (z >= std::numeric_limits<std::int64_t>::min() && z <= std::numeric_limits<std::int64_t>::max()) {
    return z.convert_to<std::int64_t>();
  }
  return z.str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      throw DomainError("malformed integer '" + j.get<std::string>() + "'");
    }
  }
  throw DomainError("expected an integer or a decimal string");
}

}  // namespace

Json rational_to_json(const Rational& r) {
  return Json::array({integer_to_json(numerator(r)), integer_to_json(denominator(r))});
}

Rational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) {
    const Integer den = integer_from_json(j[1]);
    if (den == 0) throw DomainError("zero denominator");
    return Rational(integer_from_json(j[0]), den);
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational as [num, den]");
}

Json to_json(const CompressiveMap& f) {
  const unsigned m = f.output_bits();
  std::vector<std::uint8_t> bytes((f.table().size() * m + 7) / 8, 0);
  std::size_t bit = 0;
  for (Output y : f.table()) {
    for (unsigned b = 0; b < m; ++b, ++bit) {
      if ((y >> (m - 1 - b)) & 1U) bytes[bit / 8] |= static_cast<std::uint8_t>(0x80U >> (bit % 8));
    }
  }
  return Json{{"t", f.arity()},
              {"m", m},
              {"r", f.randomness_bits()},
              {"alphabet_size", f.alphabet_size()},
              {"table", base64_encode(bytes)}};
}

CompressiveMap compressive_map_from_json(const Json& j) {
  try {
    const auto t = j.at("t").get<std::uint32_t>();
    const auto m = j.at("m").get<std::uint32_t>();
    const auto r = j.at("r").get<std::uint32_t>();
    const auto k = j.contains("alphabet_size") ? j.at("alphabet_size").get<std::uint32_t>() : 2U;
    if (m > 63) throw DomainError("at most 63 output bits are supported");
    const std::uint64_t rows = CompressiveMap::row_count(k, t, r);
    const auto bytes = base64_decode(j.at("table").get<std::string>());
    if (bytes.size() != (rows * m + 7) / 8) throw DomainError("table length does not match t, m, r");
    std::vector<Output> table(rows, 0);
    std::size_t bit = 0;
    for (auto& y : table) {
      for (unsigned b = 0; b < m; ++b, ++bit) {
        y = (y << 1) | ((bytes[bit / 8] >> (7 - bit % 8)) & 1U);
      }
    }
    return CompressiveMap(k, t, m, r, std::move(table));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed compressive map JSON: ") + e.what());
  }
}

Json to_json(const ToyLanguage& language) {
  Json yes = Json::array();
  for (Instance x : language.yes_instances()) yes.push_back(instance_to_hex(x, language.input_length()));
  return Json{{"n", language.input_length()}, {"yes", std::move(yes)}};
}

ToyLanguage language_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<unsigned>();
    std::vector<Instance> yes;
    for (const auto& h : j.at("yes")) yes.push_back(instance_from_hex(h.get<std::string>(), n));
    return ToyLanguage::from_yes_instances(n, yes);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed language JSON: ") + e.what());
  }
}

Json to_json(const DominatingSet& d, unsigned input_length) {
  Json elements = Json::array();
  for (const auto& g : d.elements) {
    Json members = Json::array();
    for (Instance x : g) members.push_back(instance_to_hex(x, input_length));
    elements.push_back(std::move(members));
  }
  return Json{{"t", d.edge_size}, {"n", input_length}, {"elements", std::move(elements)}, {"trace", d.trace}};
}

DominatingSet dominating_set_from_json(const Json& j) {
  try {
    DominatingSet d;
    d.edge_size = j.at("t").get<std::size_t>();
    const auto n = j.at("n").get<unsigned>();
    for (const auto& g : j.at("elements")) {
      std::vector<Instance> members;
      for (const auto& h : g) members.push_back(instance_from_hex(h.get<std::string>(), n));
      d.elements.push_back(canonical_set(std::move(members)));
    }
    if (j.contains("trace")) d.trace = j.at("trace").get<std::vector<std::size_t>>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed dominating set JSON: ") + e.what());
  }
}

Json to_json(const Advice& advice) {
  Json out{{"n", advice.input_length},
           {"mode", to_string(advice.mode)},
           {"reduction", to_string(advice.reduction)},
           {"t", advice.t},
           {"edge_size", advice.edge_size},
           {"size", advice.size()}};
  if (advice.mode == AdviceMode::full_v) {
    Json no = Json::array();
    for (Instance x : advice.no_instances) no.push_back(instance_to_hex(x, advice.input_length));
    out["no_instances"] = std::move(no);
  } else {
    out["dominating_set"] = to_json(advice.dominating_set, advice.input_length);
  }
  return out;
}

Json to_json(const AuditReport& report) {
  Json disagreements = Json::array();
  for (Instance x : report.disagreements) disagreements.push_back(instance_to_hex(x, report.n));
  return Json{{"n", report.n},
              {"t", report.t},
              {"reduction", to_string(report.reduction)},
              {"advice_mode", to_string(report.advice_mode)},
              {"advice_size", report.advice_size},
              {"inputs", report.inputs},
              {"agreement", report.agreement()},
              {"query_tags", {{"yes", report.yes_tags}, {"no", report.no_tags}, {"gap", report.gap_tags}}},
              {"disagreements", std::move(disagreements)},
              {"advice", to_json(report.advice)}};
}

}  // namespace complab
