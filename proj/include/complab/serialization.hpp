#pragma once

// JSON forms of the artifact's data: distributions, compressive maps, toy
// languages, dominating sets and audit reports.

#include "complab/compressive_map.hpp"
#include "complab/distribution.hpp"
#include "complab/language.hpp"
#include "complab/reduction.hpp"
#include "complab/tournament.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace complab {

using Json = nlohmann::json;

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Rational as [num, den]; numbers that do not fit in 64 bits become decimal strings.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

/// {"outcomes": [...], "mass": [[num, den], ...]} for exact distributions,
/// {"outcomes": [...], "mass": [float, ...]} for float ones.
template <class Outcome, Mass M>
Json distribution_to_json(const Distribution<Outcome, M>& p) {
  Json outcomes = Json::array();
  Json mass = Json::array();
  for (const auto& [o, m] : p.entries()) {
    outcomes.push_back(o);
    if constexpr (is_exact_v<M>) {
      mass.push_back(rational_to_json(m));
    } else {
      mass.push_back(m);
    }
  }
  return Json{{"outcomes", std::move(outcomes)}, {"mass", std::move(mass)}};
}

template <class Outcome, Mass M>
Distribution<Outcome, M> distribution_from_json(const Json& j) {
  const auto& outcomes = j.at("outcomes");
  const auto& mass = j.at("mass");
  if (!outcomes.is_array() || !mass.is_array() || outcomes.size() != mass.size()) {
    throw DomainError("distribution JSON needs equally long outcomes and mass arrays");
  }
  std::vector<std::pair<Outcome, M>> entries;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    M m;
    if constexpr (is_exact_v<M>) {
      m = rational_from_json(mass[i]);
    } else {
      m = mass[i].get<double>();
    }
    entries.emplace_back(outcomes[i].get<Outcome>(), m);
  }
  return Distribution<Outcome, M>::from_entries(std::move(entries));
}

/// {"t", "m", "r", "alphabet_size", "table"}: the table is the row-major
/// concatenation of every row's m bits (first bit most significant), packed
/// into bytes most significant bit first, zero-padded, base64-encoded.
Json to_json(const CompressiveMap& f);
CompressiveMap compressive_map_from_json(const Json& j);

/// {"n", "yes": [hex, ...]}.
Json to_json(const ToyLanguage& language);
ToyLanguage language_from_json(const Json& j);

/// {"t", "n", "elements": [[hex, ...], ...], "trace": [...]}; "t" is the edge size.
Json to_json(const DominatingSet& d, unsigned input_length);
DominatingSet dominating_set_from_json(const Json& j);

Json to_json(const Advice& advice);
Json to_json(const AuditReport& report);

}  // namespace complab
