#include <gtest/gtest.h>

#include <set>

#include "ccc/mixed_radix.hpp"

using namespace ccc;

namespace {

DomainSpec d72() { return DomainSpec::mixed({{2, 3}, {3, 2}}); }

}  // namespace

TEST(DomainSpec, DerivedParameters) {
  const auto d = d72();
  EXPECT_EQ(d.modulus(), 6u);
  EXPECT_EQ(d.length(), 72u);
  EXPECT_EQ(d.variable_count(), 5u);
  EXPECT_EQ(d.block_offset(1), 3u);
  EXPECT_EQ(d.stride(0), 1u);
  EXPECT_EQ(d.stride(1), 8u);
  EXPECT_EQ(d.block_weight(0), 3u);
  EXPECT_EQ(d.block_weight(1), 2u);
  EXPECT_FALSE(d.is_uniform());
}

TEST(DomainSpec, StridesMultiplyBlockLengths) {
  const auto d = DomainSpec::mixed({{2, 2}, {3, 2}, {5, 1}});
  EXPECT_EQ(d.length(), 180u);
  EXPECT_EQ(d.modulus(), 30u);
  for (std::size_t i = 0; i + 1 < d.block_count(); ++i) EXPECT_EQ(d.stride(i + 1), d.stride(i) * d.block_length(i));
}

TEST(DomainSpec, RejectsBadBlocks) {
  EXPECT_THROW(DomainSpec::mixed({{3, 2}, {2, 2}}), DomainError);
  EXPECT_THROW(DomainSpec::mixed({{2, 2}, {2, 1}}), DomainError);
  EXPECT_THROW(DomainSpec::mixed({{4, 2}, {3, 1}}), DomainError);
  EXPECT_THROW(DomainSpec::mixed({{2, 0}}), DomainError);
}

TEST(DomainSpec, AllowsSingleVariableBlocks) {
  const auto d = DomainSpec::mixed({{2, 1}, {3, 2}});
  EXPECT_EQ(d.length(), 18u);
}

TEST(DomainSpec, UniformCompositeModulus) {
  const auto d = DomainSpec::uniform(6, 2);
  EXPECT_TRUE(d.is_uniform());
  EXPECT_EQ(d.length(), 36u);
  EXPECT_EQ(d.block_weight(0), 1u);
}

TEST(IntToVec, TableIRows) {
  const auto d = d72();
  EXPECT_EQ(int_to_vec(11, d).digits, (std::vector<Residue>{1, 1, 0, 1, 0}));
  EXPECT_EQ(int_to_vec(70, d).digits, (std::vector<Residue>{0, 1, 1, 2, 2}));
  EXPECT_EQ(int_to_vec(0, d).digits, (std::vector<Residue>{0, 0, 0, 0, 0}));
}

TEST(VecToInt, TableIRows) {
  const auto d = d72();
  EXPECT_EQ(vec_to_int(DomainPoint{{1, 1, 1, 0, 0}}, d), 7u);
  EXPECT_EQ(vec_to_int(DomainPoint{{0, 1, 1, 2, 2}}, d), 70u);
  EXPECT_EQ(vec_to_int(DomainPoint{{0, 0, 0, 0, 0}}, d), 0u);
}

TEST(IntToVec, RangeError) {
  EXPECT_THROW(int_to_vec(72, d72()), RangeError);
}

TEST(VecToInt, DomainErrors) {
  EXPECT_THROW(vec_to_int(DomainPoint{{2, 0, 0, 0, 0}}, d72()), DomainError);
  EXPECT_THROW(vec_to_int(DomainPoint{{0, 0, 0, 3, 0}}, d72()), DomainError);
  EXPECT_THROW(vec_to_int(DomainPoint{{0, 0, 0}}, d72()), DomainError);
}

TEST(RoundTrip, ExhaustiveBijection) {
  for (const auto& d : {d72(), DomainSpec::mixed({{2, 2}, {3, 2}, {5, 1}}), DomainSpec::uniform(4, 3),
                        DomainSpec::mixed({{3, 4}, {5, 2}, {7, 1}})}) {
    std::set<std::vector<Residue>> seen;
    for (std::uint64_t x = 0; x < d.length(); ++x) {
      const auto v = int_to_vec(x, d);
      ASSERT_EQ(vec_to_int(v, d), x);
      for (std::size_t j = 0; j < v.digits.size(); ++j) ASSERT_LT(v.digits[j], d.radix_of_variable(j));
      seen.insert(v.digits);
    }
    EXPECT_EQ(seen.size(), d.length());
  }
}

TEST(RoundTrip, SingleBlockIsBaseP) {
  const auto d = DomainSpec::mixed({{3, 4}});
  for (std::uint64_t x = 0; x < d.length(); ++x) {
    const auto v = int_to_vec(x, d);
    std::uint64_t y = x;
    for (auto digit : v.digits) {
      EXPECT_EQ(digit, y % 3);
      y /= 3;
    }
  }
}
