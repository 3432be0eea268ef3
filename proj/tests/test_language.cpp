#include "complab/error.hpp"
#include "complab/language.hpp"

#include <gtest/gtest.h>

namespace complab {
namespace {

TEST(BitString, ParsesMostSignificantFirst) {
  const auto b = BitString::parse("0110");
  EXPECT_EQ(b.value, 6U);
  EXPECT_EQ(b.length, 4U);
  EXPECT_EQ(b.to_string(), "0110");
  EXPECT_EQ(BitString::parse("").length, 0U);
  EXPECT_THROW(BitString::parse("012"), DomainError);
  EXPECT_THROW(BitString::parse(std::string(25, '1')), DomainError);
}

TEST(Hex, RoundTripsAndPads) {
  EXPECT_EQ(instance_to_hex(0x5, 8), "05");
  EXPECT_EQ(instance_to_hex(0, 0), "0");
  EXPECT_EQ(instance_to_hex(0x1f, 5), "1f");
  for (unsigned n = 1; n <= 10; ++n) {
    for (Instance x = 0; x < (1U << n); x += 3) EXPECT_EQ(instance_from_hex(instance_to_hex(x, n), n), x);
  }
  EXPECT_EQ(instance_from_hex("A", 4), 10U);
  EXPECT_THROW(instance_from_hex("10", 4), DomainError);
  EXPECT_THROW(instance_from_hex("g", 4), DomainError);
  EXPECT_THROW(instance_from_hex("", 4), DomainError);
}

TEST(Bits, FixedWidth) {
  EXPECT_EQ(instance_to_bits(1, 3), "001");
  EXPECT_EQ(instance_to_bits(0, 0), "");
}

TEST(ToyLanguage, YesAndNoPartitionTheCube) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const unsigned n = static_cast<unsigned>(seed % 7);
    const auto lang = random_language(n, seed);
    const auto yes = lang.yes_instances();
    const auto no = lang.no_instances();
    EXPECT_EQ(yes.size() + no.size(), std::uint64_t{1} << n);
    for (Instance x : yes) EXPECT_TRUE(lang.contains(x));
    for (Instance x : no) EXPECT_FALSE(lang.contains(x));
    EXPECT_EQ(lang.complement().yes_instances(), no);
    EXPECT_EQ(lang.complement().complement(), lang);
  }
}

TEST(ToyLanguage, RandomIsDeterministicInSeed) {
  EXPECT_EQ(random_language(6, 3), random_language(6, 3));
  EXPECT_NE(random_language(6, 3), random_language(6, 4));
}

TEST(ToyLanguage, RejectsBadTables) {
  EXPECT_THROW(ToyLanguage(2, std::vector<bool>(3)), DomainError);
  EXPECT_THROW(ToyLanguage::from_yes_instances(2, {4}), DomainError);
  EXPECT_THROW(ToyLanguage(25, {}), DomainError);
}

TEST(Builtins, Membership) {
  EXPECT_TRUE(builtin_language("empty", 3).yes_instances().empty());
  EXPECT_TRUE(builtin_language("full", 3).no_instances().empty());
  EXPECT_EQ(builtin_language("single-yes", 3).yes_instances(), std::vector<Instance>{7});
  EXPECT_EQ(builtin_language("single-no", 3).no_instances(), std::vector<Instance>{0});
  EXPECT_EQ(builtin_language("parity", 2).yes_instances(), (std::vector<Instance>{1, 2}));
  EXPECT_EQ(builtin_language("half", 2).yes_instances(), (std::vector<Instance>{2, 3}));
  EXPECT_THROW(builtin_language("nope", 2), DomainError);
}

TEST(LanguageCode, EnumeratesAllLanguages) {
  EXPECT_EQ(language_from_code(2, 0b0101).yes_instances(), (std::vector<Instance>{0, 2}));
  for (std::uint64_t code = 0; code < 16; ++code) {
    std::uint64_t back = 0;
    for (Instance x : language_from_code(2, code).yes_instances()) back |= std::uint64_t{1} << x;
    EXPECT_EQ(back, code);
  }
  EXPECT_THROW(language_from_code(7, 0), DomainError);
}

}  // namespace
}  // namespace complab
