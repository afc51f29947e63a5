#include <gtest/gtest.h>

#include "ccc/example72.hpp"
#include "ccc/qary_function.hpp"
#include "ccc/random_fill.hpp"

using namespace ccc;

namespace {

DomainSpec d72() { return example72::domain(); }

}  // namespace

TEST(BuildFromSpec, ExampleFirstEntries) {
  const auto f = build_from_spec(example72::spec());
  const std::vector<Residue> head(f.table().begin(), f.table().begin() + 8);
  EXPECT_EQ(head, (std::vector<Residue>{2, 2, 3, 5, 2, 5, 1, 0}));
  EXPECT_EQ(f.eval(7), 0u);
  EXPECT_EQ(f.eval(2), 3u);
}

TEST(BuildFromSpec, AllZeroIsZeroFunction) {
  const auto d = d72();
  GeneralizedQuadraticSpec s;
  s.domain = d;
  s.restricted = RestrictionSet(d, {});
  const auto z = FuncTable::constant(6, 0);
  s.chains = {{{z, z}, {z, z}}, {{z, z}}};
  s.couplings = {Coupling{0, z, z}};
  s.shared.order = {{0, 1, 2}, {3, 4}};
  s.shared.linear = {{z, z, z}, {z, z}};
  const auto f = build_from_spec(s);
  for (auto v : f.table()) EXPECT_EQ(v, 0u);
}

TEST(BuildFromSpec, BinaryProduct) {
  const auto id = FuncTable::identity(2);
  const auto z = FuncTable::constant(2, 0);
  const auto s = theorem1_spec(2, 2, {id}, {id}, {z, z}, {0, 1});
  EXPECT_EQ(build_from_spec(s).table(), (std::vector<Residue>{0, 0, 0, 1}));
}

TEST(BuildFromSpec, MatchesMonomialForm) {
  const auto d = d72();
  const auto mono = QaryFunction::from_monomials(MonomialForm::parse(d, example72::kPolynomial));
  EXPECT_EQ(build_from_spec(example72::spec()).table(), mono.table());
}

TEST(ValidateSpec, Errors) {
  auto s = example72::spec();
  s.shared.order[0] = {0, 0};
  EXPECT_THROW(validate_spec(s), SpecError);
  s = example72::spec();
  s.shared.linear[1][0] = FuncTable::identity(4);
  EXPECT_THROW(validate_spec(s), SpecError);
  s = example72::spec();
  s.shared.order[0] = {0, 3};
  EXPECT_THROW(validate_spec(s), SpecError);
  const auto d = d72();
  EXPECT_THROW(RestrictionSet(d, {3, 0}), SpecError);
}

TEST(ValidateSpec, TooManyRestricted) {
  const auto d = DomainSpec::uniform(3, 2);
  GeneralizedQuadraticSpec s;
  s.domain = d;
  s.restricted = RestrictionSet(d, {0, 1});
  s.chains = {{}};
  s.shared.order = {{}};
  s.shared.linear = {{}};
  EXPECT_THROW(validate_spec(s), SpecError);
}

TEST(Restrict, ExampleRestrictionsMatchPrintedForms) {
  const auto d = d72();
  const auto f = build_from_spec(example72::spec());
  const auto g0 = QaryFunction::from_monomials(MonomialForm::parse(d, example72::kRestrictionZero));
  const auto g1 = QaryFunction::from_monomials(MonomialForm::parse(d, example72::kRestrictionOne));
  const auto v0 = restrict(f, {1}, {0});
  const auto v1 = restrict(f, {1}, {1});
  ASSERT_EQ(v0.support().size(), 36u);
  for (auto x : v0.support()) EXPECT_EQ(v0.eval(x), g0.table()[x]);
  for (auto x : v1.support()) EXPECT_EQ(v1.eval(x), g1.table()[x]);
}

TEST(Restrict, OffSupportAndBadDigits) {
  const auto f = build_from_spec(example72::spec());
  const auto v0 = restrict(f, {1}, {0});
  EXPECT_THROW(v0.eval(2), DomainError);
  EXPECT_THROW(restrict(f, {1}, {2}), DomainError);
  EXPECT_THROW(restrict(f, {3}, {3}), DomainError);
}

TEST(Restrict, EmptyIsWholeFunction) {
  const auto f = build_from_spec(example72::spec());
  const auto v = restrict(f, {}, {});
  EXPECT_EQ(v.support().size(), 72u);
  for (std::uint64_t x = 0; x < 72; ++x) EXPECT_EQ(v.eval(x), f.eval(x));
}

TEST(Restrict, SupportsPartitionDomain) {
  const auto d = DomainSpec::mixed({{2, 3}, {3, 2}});
  const auto f = QaryFunction::zero(d);
  const std::vector<std::size_t> j = {0, 2, 4};
  const RestrictionSet set(d, j);
  std::vector<int> hits(d.length(), 0);
  std::size_t total = 0;
  for (std::uint64_t c = 0; c < set.count(); ++c) {
    const auto v = restrict(f, j, set.digits_of(c));
    for (auto x : v.support()) ++hits[x];
    total += v.support().size();
  }
  EXPECT_EQ(total, d.length());
  for (auto h : hits) EXPECT_EQ(h, 1);
}

TEST(IsPermutationMod, Examples) {
  EXPECT_TRUE(is_permutation_mod(FuncTable::identity(6), 2));
  EXPECT_FALSE(is_permutation_mod(FuncTable::constant(6, 0), 2));
  EXPECT_FALSE(is_permutation_mod(FuncTable::constant(6, 0), 3));
  EXPECT_TRUE(is_permutation_mod(FuncTable::affine(6, 1, 3), 3));
  EXPECT_THROW(is_permutation_mod(FuncTable::identity(6), 4), DomainError);
}

TEST(IsPermutationMod, RandomTablesAgreeWithConstruction) {
  random::Engine rng(4);
  for (int r = 0; r < 200; ++r) {
    EXPECT_TRUE(is_permutation_mod(random::permutation_table(rng, 6, 3), 3));
    EXPECT_FALSE(is_permutation_mod(random::nonpermutation_table(rng, 6, 2), 2));
  }
}

TEST(Monomials, CountsOnExampleDomain) {
  const auto d = d72();
  EXPECT_EQ(monomials_upto(d, 2).size(), 27u);
  EXPECT_EQ(monomials_upto(d, 0).size(), 1u);
  for (const auto& e : monomials_upto(d, 2)) EXPECT_LE(hamming_weight(e), 2u);
}

TEST(Monomials, NoDuplicates) {
  auto m = monomials_upto(d72(), 5);
  EXPECT_EQ(m.size(), 72u);
  std::sort(m.begin(), m.end());
  EXPECT_EQ(std::unique(m.begin(), m.end()), m.end());
}

TEST(HammingDegree, Examples) {
  const auto d = d72();
  EXPECT_EQ(hamming_degree(MonomialForm::parse(d, example72::kPolynomial)), 2u);
  EXPECT_EQ(hamming_degree(MonomialForm::parse(d, "4")), 0u);
  EXPECT_EQ(hamming_degree(MonomialForm::parse(d, "x1x2x3")), 3u);
  EXPECT_EQ(hamming_degree(MonomialForm(d)), 0u);
}

TEST(MonomialForm, ParseRejectsBadInput) {
  const auto d = d72();
  EXPECT_THROW(MonomialForm::parse(d, "x9"), SpecError);
  EXPECT_THROW(MonomialForm::parse(d, "x1^2"), DomainError);
  EXPECT_THROW(MonomialForm::parse(d, "2y"), SpecError);
}

TEST(MonomialForm, HigherPowersInOddBlock) {
  const auto d = d72();
  const auto f = QaryFunction::from_monomials(MonomialForm::parse(d, "x4^2"));
  EXPECT_EQ(f.eval(int_to_vec(vec_to_int(DomainPoint{{0, 0, 0, 2, 0}}, d), d)), 4u);
}
