#include <gtest/gtest.h>

#include "ccc/example72.hpp"
#include "ccc/waveform.hpp"

using namespace ccc;

TEST(Eta, ExampleListing) {
  const auto e = eta(build_from_spec(example72::spec()));
  ASSERT_EQ(e.size(), 72u);
  EXPECT_TRUE(std::equal(e.begin(), e.end(), example72::kEta.begin()));
  EXPECT_EQ((std::vector<Residue>(e.end() - 3, e.end())), (std::vector<Residue>{1, 1, 0}));
}

TEST(Eta, ZeroAndSingleVariable) {
  const auto d = DomainSpec::uniform(2, 1);
  EXPECT_EQ(eta(QaryFunction::zero(d)), (std::vector<Residue>{0, 0}));
  EXPECT_EQ(eta(QaryFunction::from_monomials(MonomialForm::parse(d, "x1"))), (std::vector<Residue>{0, 1}));
}

TEST(Psi, ExponentsEqualEta) {
  const auto f = build_from_spec(example72::spec());
  const auto p = psi(f);
  EXPECT_EQ(p.support_size(), 72u);
  for (std::size_t x = 0; x < 72; ++x) EXPECT_EQ(*p.at(x), example72::kEta[x]);
}

TEST(Psi, BinaryProduct) {
  const auto d = DomainSpec::uniform(2, 2);
  const auto p = psi(QaryFunction::from_monomials(MonomialForm::parse(d, "x1x2")));
  EXPECT_EQ(p.entries(), (std::vector<std::int32_t>{0, 0, 0, 1}));
  EXPECT_EQ(psi(QaryFunction::zero(d)).entries(), (std::vector<std::int32_t>{0, 0, 0, 0}));
}

TEST(PsiRestricted, ExamplePatternStart) {
  const auto r = psi_restricted(build_from_spec(example72::spec()), {1}, {0});
  const auto n = RootSequence::kNull;
  EXPECT_EQ((std::vector<std::int32_t>(r.entries().begin(), r.entries().begin() + 6)),
            (std::vector<std::int32_t>{2, 2, n, n, 2, 5}));
  EXPECT_EQ(r.support_size(), 36u);
}

TEST(PsiRestricted, EmptyRestrictionIsPsi) {
  const auto f = build_from_spec(example72::spec());
  EXPECT_EQ(psi_restricted(f, {}, {}), psi(f));
}

TEST(PsiRestricted, SupportsPartitionAndSuperpose) {
  const auto d = DomainSpec::mixed({{2, 3}, {3, 2}});
  const auto f = build_from_spec(example72::spec());
  const std::vector<std::size_t> j = {1, 3};
  const RestrictionSet set(d, j);
  std::vector<std::int32_t> sum(d.length(), RootSequence::kNull);
  for (std::uint64_t c = 0; c < set.count(); ++c) {
    const auto r = psi_restricted(f, j, set.digits_of(c));
    EXPECT_EQ(r.support_size(), d.length() / 6);
    for (std::size_t x = 0; x < d.length(); ++x) {
      if (r.is_null(x)) continue;
      ASSERT_EQ(sum[x], RootSequence::kNull);
      sum[x] = r.entries()[x];
    }
  }
  EXPECT_EQ(RootSequence(6, sum), psi(f));
}

TEST(RootSequence, RejectsBadExponents) {
  EXPECT_THROW(RootSequence(3, {0, 3}), DomainError);
  EXPECT_THROW(RootSequence(3, {-2}), DomainError);
  EXPECT_NO_THROW(RootSequence(3, {RootSequence::kNull, 2}));
}
