#include "complab/set_compression.hpp"

#include "complab/budget.hpp"
#include "complab/error.hpp"

#include <algorithm>
#include <string>

namespace complab {

InstanceSet canonical_set(std::vector<Instance> items) {
  std::sort(items.begin(), items.end());
  if (std::adjacent_find(items.begin(), items.end()) != items.end()) {
    throw DomainError("set contains a duplicate instance");
  }
  return items;
}

SetEncodedCompression::SetEncodedCompression(Shape shape, Rational soundness_error,
                                             Rational completeness_error, Evaluator evaluator,
                                             TargetPredicate target, std::string name)
    : shape_(shape),
      soundness_error_(std::move(soundness_error)),
      completeness_error_(std::move(completeness_error)),
      evaluator_(std::move(evaluator)),
      target_(std::move(target)),
      name_(std::move(name)) {
  if (shape_.input_length > kMaxInputLength) throw DomainError("input length above 24 is not supported");
  if (shape_.arity == 0) throw DomainError("arity must be positive");
  if (shape_.output_bits > 63) throw DomainError("at most 63 output bits are supported");
  if (shape_.coin_bits > 30) throw DomainError("at most 30 coin bits are supported");
  if (soundness_error_ < 0 || completeness_error_ < 0 || soundness_error_ > 1 ||
      completeness_error_ > 1) {
    throw DomainError("errors must lie in [0, 1]");
  }
  if (!evaluator_ || !target_) throw DomainError("compression needs an evaluator and a target");
}

double SetEncodedCompression::compression_ratio() const {
  return static_cast<double>(shape_.output_bits) / shape_.arity;
}

Output SetEncodedCompression::evaluate_sorted(std::span<const Instance> set, std::uint64_t coin) const {
  if (set.size() > shape_.arity) throw DomainError("set larger than the arity");
  if (coin >= coin_count()) throw DomainError("coin outside the coin range");
  const Instance limit = static_cast<Instance>((std::uint64_t{1} << shape_.input_length) - 1);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] > limit) throw DomainError("instance longer than the input length");
    if (i > 0 && set[i - 1] >= set[i]) throw DomainError("set is not canonical");
  }
  const Output y = evaluator_(set, coin);
  if (shape_.output_bits < 64 && (y >> shape_.output_bits) != 0) {
    throw InvariantViolation("evaluator output does not fit in the output bits");
  }
  return y;
}

Output SetEncodedCompression::evaluate(std::vector<Instance> set, std::uint64_t coin) const {
  const InstanceSet sorted = canonical_set(std::move(set));
  return evaluate_sorted(sorted, coin);
}

Distribution<Output> SetEncodedCompression::output_distribution(std::vector<Instance> set) const {
  const InstanceSet sorted = canonical_set(std::move(set));
  OutputCounts counts;
  for (std::uint64_t c = 0; c < coin_count(); ++c) ++counts.counts[evaluate_sorted(sorted, c)];
  counts.total = coin_count();
  return counts.to_distribution();
}

namespace {

bool any_yes(const ToyLanguage& language, std::span<const Instance> set) {
  return std::any_of(set.begin(), set.end(), [&](Instance x) { return language.contains(x); });
}

void check_arity(unsigned arity) {
  if (arity == 0) throw DomainError("arity must be positive");
}

}  // namespace

SetEncodedCompression ideal_or_compression(const ToyLanguage& language, unsigned arity) {
  check_arity(arity);
  SetEncodedCompression::Shape shape{language.input_length(), arity, 1, 0};
  return SetEncodedCompression(
      shape, Rational(0), Rational(0),
      [language](std::span<const Instance> set, std::uint64_t) -> Output {
        return any_yes(language, set) ? 1 : 0;
      },
      [](Output y) { return y == 1; }, "ideal-or");
}

SetEncodedCompression noisy_or_compression(const ToyLanguage& language, unsigned arity,
                                           const Rational& soundness_error,
                                           const Rational& completeness_error, unsigned coin_bits) {
  check_arity(arity);
  if (coin_bits > 30) throw DomainError("at most 30 coin bits are supported");
  const Integer coins = Integer(1) << coin_bits;
  auto flips = [&](const Rational& e, const char* what) -> std::uint64_t {
    if (e < 0 || e > 1) throw DomainError(std::string(what) + " must lie in [0, 1]");
    const Rational scaled = e * Rational(coins);
    if (denominator(scaled) != 1) {
      throw DomainError(std::string(what) + " is not a multiple of 2^-coin_bits");
    }
    return numerator(scaled).convert_to<std::uint64_t>();
  };
  const std::uint64_t flip_no = flips(soundness_error, "soundness error");
  const std::uint64_t flip_yes = flips(completeness_error, "completeness error");
  SetEncodedCompression::Shape shape{language.input_length(), arity, 1, coin_bits};
  return SetEncodedCompression(
      shape, soundness_error, completeness_error,
      [language, flip_no, flip_yes](std::span<const Instance> set, std::uint64_t coin) -> Output {
        const bool yes = any_yes(language, set);
        const bool flip = coin < (yes ? flip_yes : flip_no);
        return (yes != flip) ? 1 : 0;
      },
      [](Output y) { return y == 1; }, "noisy-or");
}

namespace {

/// The ground set of a subset law with v removed, plus whether v is forced in.
struct SubsetLaw {
  std::vector<Instance> free;
  std::optional<Instance> forced;
};

SubsetLaw subset_law(std::span<const Instance> e, SubsetMode mode, std::optional<Instance> v) {
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i - 1] >= e[i]) throw DomainError("ground set must be sorted and distinct");
  }
  if (e.size() >= 63) throw BudgetExceeded("ground set too large to enumerate");
  SubsetLaw law;
  if (mode == SubsetMode::all) {
    if (v) throw DomainError("mode 'all' takes no distinguished vertex");
    law.free.assign(e.begin(), e.end());
    return law;
  }
  if (!v) throw DomainError("modes 'with' and 'without' need a distinguished vertex");
  if (!std::binary_search(e.begin(), e.end(), *v)) {
    throw DomainError("distinguished vertex is not in the ground set");
  }
  for (Instance x : e) {
    if (x != *v) law.free.push_back(x);
  }
  if (mode == SubsetMode::with) law.forced = *v;
  return law;
}

/// Calls fn(sorted subset) for every subset of the law, in mask order.
template <class Fn>
void for_each_subset(const SubsetLaw& law, Fn&& fn) {
  const std::uint64_t count = std::uint64_t{1} << law.free.size();
  std::vector<Instance> set;
  set.reserve(law.free.size() + 1);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    set.clear();
    bool forced_placed = !law.forced;
    for (std::size_t i = 0; i < law.free.size(); ++i) {
      if (!forced_placed && *law.forced < law.free[i]) {
        set.push_back(*law.forced);
        forced_placed = true;
      }
      if ((mask >> i) & 1U) set.push_back(law.free[i]);
    }
    if (!forced_placed) set.push_back(*law.forced);
    fn(std::span<const Instance>(set));
  }
}

}  // namespace

Distribution<InstanceSet> subset_distribution(std::span<const Instance> e, SubsetMode mode,
                                              std::optional<Instance> v) {
  const SubsetLaw law = subset_law(e, mode, v);
  check_budget(std::uint64_t{1} << law.free.size(), "subset distribution");
  const Rational each = dyadic(1, static_cast<unsigned>(law.free.size()));
  std::vector<std::pair<InstanceSet, Rational>> entries;
  for_each_subset(law, [&](std::span<const Instance> set) {
    entries.emplace_back(InstanceSet(set.begin(), set.end()), each);
  });
  return Distribution<InstanceSet>::from_entries(std::move(entries));
}

Distribution<Output> output_distribution(const SetEncodedCompression& a,
                                         const Distribution<InstanceSet>& sets) {
  check_budget(saturating_mul(sets.size(), a.coin_count()), "output distribution");
  const Rational coin_mass = dyadic(1, a.coin_bits());
  DistributionBuilder<Output> builder;
  for (const auto& [set, m] : sets.entries()) {
    if (m == 0) continue;
    const Rational share = m * coin_mass;
    for (std::uint64_t c = 0; c < a.coin_count(); ++c) builder.add(a.evaluate_sorted(set, c), share);
  }
  return std::move(builder).build();
}

Distribution<Output> OutputCounts::to_distribution() const {
  if (total == 0) throw DomainError("empty tally");
  std::vector<std::pair<Output, Rational>> entries;
  entries.reserve(counts.size());
  for (const auto& [y, n] : counts) entries.emplace_back(y, mass_from_counts<Rational>(n, total));
  return Distribution<Output>::from_entries(std::move(entries));
}

Rational statistical_distance(const OutputCounts& p, const OutputCounts& q) {
  if (p.total == 0 || q.total == 0) throw DomainError("empty tally");
  // sum |p_y q.total - q_y p.total| / (2 p.total q.total), in integers.
  Integer diff = 0;
  auto ip = p.counts.begin();
  auto iq = q.counts.begin();
  const Integer pt(p.total);
  const Integer qt(q.total);
  while (ip != p.counts.end() || iq != q.counts.end()) {
    Integer a = 0;
    Integer b = 0;
    if (iq == q.counts.end() || (ip != p.counts.end() && ip->first < iq->first)) {
      a = Integer(ip->second) * qt;
      ++ip;
    } else if (ip == p.counts.end() || iq->first < ip->first) {
      b = Integer(iq->second) * pt;
      ++iq;
    } else {
      a = Integer(ip->second) * qt;
      b = Integer(iq->second) * pt;
      ++ip;
      ++iq;
    }
    diff += a > b ? a - b : b - a;
  }
  return Rational(diff, 2 * pt * qt);
}

OutputCounts subset_output_counts(const SetEncodedCompression& a, std::span<const Instance> e,
                                  SubsetMode mode, std::optional<Instance> v) {
  const SubsetLaw law = subset_law(e, mode, v);
  const std::uint64_t sets = std::uint64_t{1} << law.free.size();
  check_budget(saturating_mul(sets, a.coin_count()), "subset output tally");
  if (e.size() > a.arity()) throw DomainError("ground set larger than the arity");
  if (!e.empty() && e.back() >= (std::uint64_t{1} << a.input_length())) {
    throw DomainError("instance longer than the input length");
  }
  const std::uint64_t coins = a.coin_count();
  OutputCounts out;
  if (a.output_bits() <= 16) {
    std::vector<std::uint64_t> dense(std::size_t{1} << a.output_bits(), 0);
    for_each_subset(law, [&](std::span<const Instance> set) {
      for (std::uint64_t c = 0; c < coins; ++c) {
        const Output y = a.evaluate_unchecked(set, c);
        if (y >= dense.size()) throw InvariantViolation("evaluator output does not fit in the output bits");
        ++dense[y];
      }
    });
    for (Output y = 0; y < dense.size(); ++y) {
      if (dense[y] > 0) out.counts.emplace(y, dense[y]);
    }
  } else {
    for_each_subset(law, [&](std::span<const Instance> set) {
      for (std::uint64_t c = 0; c < coins; ++c) ++out.counts[a.evaluate_unchecked(set, c)];
    });
  }
  out.total = sets * coins;
  return out;
}

Rational selector_distance(const SetEncodedCompression& a, std::span<const Instance> e, Instance v) {
  return statistical_distance(subset_output_counts(a, e, SubsetMode::without, v),
                              subset_output_counts(a, e, SubsetMode::with, v));
}

CompressiveMap cube_encoding(const SetEncodedCompression& a, std::span<const Instance> e) {
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i - 1] >= e[i]) throw DomainError("ground set must be sorted and distinct");
  }
  if (e.size() > a.arity()) throw DomainError("ground set larger than the arity");
  std::vector<Instance> set;
  return CompressiveMap::tabulate(
      2, static_cast<std::uint32_t>(e.size()), a.output_bits(), a.coin_bits(),
      [&](std::span<const Symbol> b, std::uint64_t coin) {
        set.clear();
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (b[i] == 1) set.push_back(e[i]);
        }
        return a.evaluate_sorted(set, coin);
      });
}

CompressiveMap block_encoding(const SetEncodedCompression& a, const std::vector<InstanceSet>& blocks) {
  if (blocks.empty()) throw DomainError("no blocks");
  if (blocks.size() > a.arity()) throw DomainError("more blocks than the arity");
  const std::size_t k = blocks.front().size();
  if (k == 0) throw DomainError("empty block");
  std::vector<Instance> all;
  for (const auto& b : blocks) {
    if (b.size() != k) throw DomainError("blocks must have equal size");
    all.insert(all.end(), b.begin(), b.end());
  }
  canonical_set(all);  // throws when blocks overlap
  std::vector<Instance> set;
  return CompressiveMap::tabulate(
      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(blocks.size()), a.output_bits(),
      a.coin_bits(), [&](std::span<const Symbol> word, std::uint64_t coin) {
        set.clear();
        for (std::size_t i = 0; i < word.size(); ++i) set.push_back(blocks[i][word[i]]);
        std::sort(set.begin(), set.end());
        return a.evaluate_sorted(set, coin);
      });
}

}  // namespace complab
