#include "complab/budget.hpp"

#include "complab/error.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <string>

namespace complab {
namespace {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

std::uint64_t initial_budget() {
  if (const char* env = std::getenv("COMPLAB_BUDGET"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("COMPLAB_BUDGET is not a positive integer: ") + env);
  }
  return kDefaultBudget;
}

std::atomic<std::uint64_t>& budget_slot() {
  static std::atomic<std::uint64_t> slot{initial_budget()};
  return slot;
}

}  // namespace

std::uint64_t enumeration_budget() { return budget_slot().load(); }

void set_enumeration_budget(std::uint64_t rows) {
  if (rows == 0) throw DomainError("enumeration budget must be positive");
  budget_slot().store(rows);
}

void check_budget(std::uint64_t rows, std::string_view what) {
  const std::uint64_t budget = enumeration_budget();
  if (rows > budget) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(rows) +
                         " rows, budget is " + std::to_string(budget));
  }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    out = saturating_mul(out, base);
    if (out == std::numeric_limits<std::uint64_t>::max()) break;
  }
  return out;
}

}  // namespace complab
