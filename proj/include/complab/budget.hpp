#pragma once

#include <cstdint>
#include <string_view>

namespace complab {

/// Process-wide cap on exhaustive enumeration, in table rows.
///
/// Defaults to 2^24 and can be overridden by the COMPLAB_BUDGET environment
/// variable (read on first use) or by set_enumeration_budget().
std::uint64_t enumeration_budget();
void set_enumeration_budget(std::uint64_t rows);

/// Throws BudgetExceeded when `rows` is larger than the current budget.
void check_budget(std::uint64_t rows, std::string_view what);

/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);
/// a*b, saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace complab
