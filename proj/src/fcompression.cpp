#include "complab/fcompression.hpp"

#include "complab/error.hpp"

#include <algorithm>
#include <array>

namespace complab {

SymmetricFunction::SymmetricFunction(std::vector<bool> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("a symmetric function needs t >= 1 (t+1 values)");
}

SymmetricFunction SymmetricFunction::from_bits(std::string_view bits) {
  std::vector<bool> values;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("function bits may only contain 0 and 1");
    values.push_back(c == '1');
  }
  return SymmetricFunction(std::move(values));
}

SymmetricFunction SymmetricFunction::builtin(std::string_view name, unsigned t) {
  if (t == 0) throw DomainError("t must be positive");
  std::vector<bool> values(t + 1);
  for (unsigned i = 0; i <= t; ++i) {
    if (name == "or") {
      values[i] = i > 0;
    } else if (name == "and") {
      values[i] = i == t;
    } else if (name == "majority") {
      values[i] = 2 * i > t;
    } else if (name == "parity") {
      values[i] = (i & 1U) != 0;
    } else {
      throw DomainError("unknown builtin function '" + std::string(name) + "'");
    }
  }
  return SymmetricFunction(std::move(values));
}

bool SymmetricFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](bool b) { return b == values_.front(); });
}

std::string SymmetricFunction::to_bits() const {
  std::string s;
  for (bool b : values_) s += b ? '1' : '0';
  return s;
}

std::string to_string(ViewKind view) {
  switch (view) {
    case ViewKind::identity:
      return "f";
    case ViewKind::negated:
      return "1-f";
    case ViewKind::reversed:
      return "f(t-i)";
    case ViewKind::negated_reversed:
      return "1-f(t-i)";
  }
  return "?";
}

namespace {

bool is_negated(ViewKind v) { return v == ViewKind::negated || v == ViewKind::negated_reversed; }
bool is_reversed(ViewKind v) { return v == ViewKind::reversed || v == ViewKind::negated_reversed; }

}  // namespace

SymmetricFunction view_function(const SymmetricFunction& f, ViewKind view) {
  const std::size_t t = f.arity();
  std::vector<bool> values(t + 1);
  for (std::size_t i = 0; i <= t; ++i) {
    const bool v = is_reversed(view) ? f(t - i) : f(i);
    values[i] = is_negated(view) ? !v : v;
  }
  return SymmetricFunction(std::move(values));
}

PivotView find_pivot_view(const SymmetricFunction& f) {
  if (f.is_constant()) throw DomainError("constant function has no pivot");
  constexpr std::array kOrder{ViewKind::identity, ViewKind::negated, ViewKind::reversed,
                              ViewKind::negated_reversed};
  const std::size_t t = f.arity();
  for (ViewKind view : kOrder) {
    const SymmetricFunction g = view_function(f, view);
    for (std::size_t i = 0; i <= t / 2 && i + 1 <= t; ++i) {
      if (!g(i) && g(i + 1)) return PivotView{view, i, is_reversed(view), is_negated(view)};
    }
  }
  throw InvariantViolation("no view of " + f.to_bits() + " has a pivot at most t/2");
}

SetEncodedCompression ideal_f_compression(const ToyLanguage& language, const SymmetricFunction& f) {
  SetEncodedCompression::Shape shape{language.input_length(), f.arity(), 1, 0};
  return SetEncodedCompression(
      shape, Rational(0), Rational(0),
      [language, f](std::span<const Instance> set, std::uint64_t) -> Output {
        std::size_t yes = 0;
        for (Instance x : set) yes += language.contains(x) ? 1 : 0;
        return f(yes) ? 1 : 0;
      },
      [](Output y) { return y == 1; }, "ideal-f(" + f.to_bits() + ")");
}

ToyLanguage source_language(const ToyLanguage& language, const PivotView& view) {
  return view.source_complemented ? language.complement() : language;
}

InstancePool make_pool(const ToyLanguage& language, const PivotView& view) {
  const ToyLanguage src = source_language(language, view);
  return InstancePool{src.yes_instances(), src.no_instances()};
}

namespace {

/// Appends the first `count` pool members that are not in `x` (sorted).
void take_fresh(const std::vector<Instance>& pool, std::span<const Instance> x, std::size_t count,
                std::vector<Instance>& out) {
  for (Instance p : pool) {
    if (count == 0) return;
    if (!std::binary_search(x.begin(), x.end(), p)) {
      out.push_back(p);
      --count;
    }
  }
  if (count > 0) throw DomainError("language trivial or pool too small");
}

}  // namespace

RelaxedOrTransform transform_to_relaxed_or(const SetEncodedCompression& a,
                                           const SymmetricFunction& f, const InstancePool& pool) {
  if (f.arity() != a.arity()) throw DomainError("function arity differs from the compression's arity");
  const PivotView view = find_pivot_view(f);
  const std::size_t i = view.pivot;
  const unsigned t = a.arity();
  const unsigned t_prime = static_cast<unsigned>(t - i);
  const bool fill = view.source_complemented;
  // i fresh yes-instances must remain after removing the (at most one) yes-instance of x.
  if (i > 0 && pool.source_yes.size() < i + 1) throw DomainError("language trivial or pool too small");
  if (fill && pool.source_no.size() < t_prime) throw DomainError("language trivial or pool too small");
  auto sorted_pool = pool;
  std::sort(sorted_pool.source_yes.begin(), sorted_pool.source_yes.end());
  std::sort(sorted_pool.source_no.begin(), sorted_pool.source_no.end());

  SetEncodedCompression::Shape shape{a.input_length(), t_prime, a.output_bits(), a.coin_bits()};
  const bool flip = view.target_complemented;
  auto evaluator = [a, sorted_pool, i, t, fill](std::span<const Instance> x, std::uint64_t coin) {
    std::vector<Instance> padded(x.begin(), x.end());
    take_fresh(sorted_pool.source_yes, x, i, padded);
    if (fill) take_fresh(sorted_pool.source_no, x, t - padded.size(), padded);
    std::sort(padded.begin(), padded.end());
    return a.evaluate_sorted(padded, coin);
  };
  auto target = [a, flip](Output y) { return a.in_target(y) != flip; };
  const Rational& es = flip ? a.completeness_error() : a.soundness_error();
  const Rational& ec = flip ? a.soundness_error() : a.completeness_error();
  SetEncodedCompression compression(shape, es, ec, std::move(evaluator), std::move(target),
                                    "relaxed-or[" + to_string(view.view) + ", i=" + std::to_string(i) +
                                        "](" + a.name() + ")");
  const double ratio = static_cast<double>(a.output_bits()) / t_prime;
  return RelaxedOrTransform{view, t_prime, std::move(compression), ratio};
}

}  // namespace complab
