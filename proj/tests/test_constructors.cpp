#include <gtest/gtest.h>

#include <set>

#include "ccc/example72.hpp"
#include "ccc/random_fill.hpp"
#include "ccc/verifier.hpp"

using namespace ccc;

namespace {

std::vector<FuncTable> zeros(std::uint32_t q, std::size_t n) { return std::vector<FuncTable>(n, FuncTable::constant(q, 0)); }

}  // namespace

TEST(Theorem1, BinaryGolayPair) {
  const auto id = FuncTable::identity(2);
  const auto c = build_theorem1(2, 2, {id}, {id}, zeros(2, 2), {0, 1});
  ASSERT_EQ(c.code_count(), 2u);
  ASSERT_EQ(c.sequences_per_code(), 2u);
  EXPECT_EQ(c.codes()[0][0].entries(), (std::vector<std::int32_t>{0, 0, 0, 1}));
  EXPECT_EQ(c.codes()[0][1].entries(), (std::vector<std::int32_t>{0, 1, 0, 0}));
  const auto rep = verify_ccc(c);
  EXPECT_TRUE(rep.is_ccc);
  EXPECT_EQ(rep.peak, 8);
}

TEST(Theorem1, RejectsNonPermutation) {
  const auto id = FuncTable::identity(3);
  const FuncTable bad(3, {0, 0, 1});
  try {
    build_theorem1(3, 3, {id, bad}, {id, id}, zeros(3, 3), {0, 1, 2});
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("link 1 (first)"), std::string::npos) << e.what();
  }
}

TEST(Theorem1, RandomSufficiencyAndPeak) {
  random::Engine rng(1);
  for (std::uint32_t q : {2u, 4u, 6u}) {
    for (int r = 0; r < 4; ++r) {
      const auto c = build_code_set(random::theorem1_spec(rng, q, 3), IndexOrder::most_significant_first);
      const auto rep = verify_ccc(c);
      EXPECT_TRUE(rep.is_ccc) << "q=" << q;
      EXPECT_EQ(rep.peak, static_cast<std::int64_t>(q * q * q * q));
    }
  }
}

TEST(Corollary1, ShapesAndVerification) {
  random::Engine rng(2);
  const auto s = random::restricted_spec(rng, DomainSpec::uniform(2, 3), {1});
  const auto c = build_corollary1(s);
  EXPECT_EQ(c.code_count(), 4u);
  EXPECT_EQ(c.length(), 8u);
  EXPECT_TRUE(verify_ccc(c).is_ccc);
  const auto s3 = random::restricted_spec(rng, DomainSpec::uniform(3, 3), {0});
  const auto rep = verify_ccc(build_corollary1(s3));
  EXPECT_TRUE(rep.is_ccc);
  EXPECT_EQ(rep.peak, 243);
}

TEST(Corollary1, EmptyRestrictionIsTheorem1) {
  const auto id = FuncTable::identity(3);
  const std::vector<FuncTable> g = {FuncTable::affine(3, 2, 1), FuncTable::constant(3, 0), FuncTable::identity(3)};
  const std::vector<std::size_t> pi = {2, 0, 1};
  const auto t1 = build_theorem1(3, 3, {id, id}, {id, FuncTable::affine(3, 2, 0)}, g, pi);
  std::vector<FuncTable> by_position;
  for (auto p : pi) by_position.push_back(g[p]);
  const auto s = corollary1_spec(3, 3, {}, {id, id}, {id, FuncTable::affine(3, 2, 0)}, by_position, pi);
  EXPECT_EQ(build_corollary1(s).codes(), t1.codes());
}

TEST(Corollary1, PerRestrictionOrdersStillVerify) {
  random::Engine rng(6);
  for (int r = 0; r < 3; ++r) {
    const auto s = random::restricted_spec(rng, DomainSpec::uniform(3, 3), {2}, true);
    EXPECT_TRUE(verify_ccc(build_corollary1(s)).is_ccc);
  }
}

TEST(Corollary1, DefaultOffsets) {
  const auto d = DomainSpec::uniform(4, 3);
  const RestrictionSet j(d, {0, 2});
  const auto off = default_restriction_offsets(d, j);
  ASSERT_EQ(off.size(), 16u);
  for (std::uint64_t c = 0; c < 16; ++c) EXPECT_EQ(off[c], j.digits_of(c).back());
}

TEST(Corollary1, NeedsUniformDomain) {
  EXPECT_THROW(build_corollary1(example72::spec()), SpecError);
}

TEST(Theorem2, ShapesAndPeak) {
  random::Engine rng(3);
  const auto c = build_theorem2(random::theorem2_params(rng, 2, 3, 2, 2));
  EXPECT_EQ(c.code_count(), 6u);
  EXPECT_EQ(c.length(), 36u);
  const auto rep = verify_ccc(c);
  EXPECT_TRUE(rep.is_ccc);
  EXPECT_EQ(rep.peak, 216);
}

TEST(Theorem2, SingleVariableBlock) {
  random::Engine rng(4);
  for (auto [m1, m2] : {std::pair{1u, 2u}, std::pair{2u, 1u}, std::pair{3u, 2u}}) {
    const auto p = random::theorem2_params(rng, 2, 3, m1, m2);
    EXPECT_TRUE(verify_ccc(build_theorem2(p)).is_ccc) << m1 << "," << m2;
  }
}

TEST(Theorem2, CodeIndexIsP1T2PlusT1) {
  // With f = 0 and pi = identity, code t's sequence d=0 is (q/p1) t1 x2 + (q/p2) t2 x4.
  Theorem2Params p;
  const auto id = FuncTable::identity(6);
  const auto z = FuncTable::constant(6, 0);
  p.block1_chain = {{id, id}};
  p.block2_chain = {{id, id}};
  p.g1 = {z, z};
  p.g2 = {z, z};
  p.coupling = {0, z, z};
  p.pi1 = {0, 1};
  p.pi2 = {2, 3};
  const auto c = build_theorem2(p);
  const auto d = DomainSpec::mixed({{2, 2}, {3, 2}});
  for (std::uint32_t t = 0; t < 6; ++t) {
    const auto t1 = t % 2, t2 = t / 2;
    for (std::uint64_t x = 0; x < 36; ++x) {
      const auto v = int_to_vec(x, d).digits;
      const auto want = (3 * v[0] * v[1] + 2 * v[2] * v[3] + 3 * t1 * v[1] + 2 * t2 * v[3]) % 6;
      ASSERT_EQ(c.codes()[t][0].entries()[x], static_cast<std::int32_t>(want)) << "t=" << t << " x=" << x;
    }
  }
}

TEST(Corollary3, ExampleIsTwelveBySeventyTwo) {
  const auto c = example72::build();
  EXPECT_EQ(c.code_count(), 12u);
  EXPECT_EQ(c.sequences_per_code(), 12u);
  EXPECT_EQ(c.length(), 72u);
  EXPECT_EQ(c.modulus(), 6u);
  EXPECT_TRUE(example72::code_matches_listing(c, 1));
  EXPECT_TRUE(example72::code_matches_listing(c, 11));
  for (std::uint32_t t = 0; t < 12; ++t) EXPECT_TRUE(example72::code_matches_listing(c, t)) << "t=" << t;
  // the listing tells codes apart
  auto swapped = c.codes();
  std::swap(swapped[1], swapped[3]);
  const CodeSet mixed(c.modulus(), swapped);
  EXPECT_FALSE(example72::code_matches_listing(mixed, 1));
}

TEST(Corollary3, SingleBlockMatchesCorollary1UpToDigitOrder) {
  random::Engine rng(5);
  auto s = random::restricted_spec(rng, DomainSpec::uniform(3, 3), {1});
  const auto lsb = build_corollary3(s);
  const auto msb = build_corollary1(s);
  const auto idx = code_index_domain(s);
  for (std::uint64_t t = 0; t < idx.length(); ++t) {
    auto digits = int_to_vec(t, idx).digits;
    std::reverse(digits.begin(), digits.end());
    const auto t_rev = vec_to_int(DomainPoint{digits}, idx);
    std::multiset<std::vector<std::int32_t>> a, b;
    for (const auto& r : lsb.codes()[t]) a.insert(r.entries());
    for (const auto& r : msb.codes()[t_rev]) b.insert(r.entries());
    EXPECT_EQ(a, b);
  }
}

TEST(Corollary3, RandomMixedRestricted) {
  random::Engine rng(7);
  for (const auto& j : {std::vector<std::size_t>{0}, std::vector<std::size_t>{3}, std::vector<std::size_t>{0, 4}}) {
    const auto s = random::restricted_spec(rng, example72::domain(), j, true);
    const auto c = build_corollary3(s);
    EXPECT_EQ(c.code_count(), c.sequences_per_code());
    EXPECT_TRUE(verify_ccc(c).is_ccc);
  }
}

TEST(CodeIndex, Bijective) {
  const auto s = example72::spec();
  const auto idx = code_index_domain(s);
  EXPECT_EQ(idx.length(), 12u);
  std::set<std::vector<Residue>> seen;
  for (std::uint64_t t = 0; t < idx.length(); ++t) seen.insert(detail::index_digits(t, idx, IndexOrder::least_significant_first));
  EXPECT_EQ(seen.size(), 12u);
}

TEST(Kronecker, ShapeAndVerification) {
  const auto id2 = FuncTable::identity(2), id3 = FuncTable::identity(3);
  const auto a = build_theorem1(2, 2, {id2}, {id2}, zeros(2, 2), {0, 1});
  const auto b = build_theorem1(3, 2, {id3}, {id3}, zeros(3, 2), {0, 1});
  const auto k = kronecker_compose(a, b);
  EXPECT_EQ(k.code_count(), 6u);
  EXPECT_EQ(k.sequences_per_code(), 6u);
  EXPECT_EQ(k.length(), 36u);
  EXPECT_EQ(k.modulus(), 6u);
  EXPECT_TRUE(verify_ccc(k).is_ccc);
}

TEST(Kronecker, TrivialFactorIsIdentity) {
  const auto id = FuncTable::identity(4);
  const auto a = build_theorem1(4, 2, {id}, {id}, zeros(4, 2), {1, 0});
  const CodeSet one(1, {{RootSequence(1, {0})}});
  EXPECT_EQ(kronecker_compose(a, one).codes(), a.codes());
  EXPECT_EQ(kronecker_compose(one, a).codes(), a.codes());
}

TEST(Kronecker, FactorOrderIsHigherBlockOutside) {
  auto s = example72::spec();
  s.per_restriction[1].linear[1] = s.shared.linear[1];
  const auto blocks = split_blocks(s);
  ASSERT_EQ(blocks.size(), 2u);
  const auto full = build_corollary3(s);
  EXPECT_EQ(full.codes(), kronecker_compose(build_corollary3(blocks[1]), build_corollary3(blocks[0])).codes());
  EXPECT_NE(full.codes(), kronecker_compose(build_corollary3(blocks[0]), build_corollary3(blocks[1])).codes());
}

TEST(Kronecker, RandomSplitsCompose) {
  random::Engine rng(10);
  for (int r = 0; r < 3; ++r) {
    const auto s = random::restricted_spec(rng, DomainSpec::mixed({{2, 2}, {3, 2}, {5, 1}}), {1}, false, true);
    EXPECT_EQ(build_corollary3(s).codes(), compose_blocks(split_blocks(s)).codes());
  }
}

TEST(Kronecker, SplitRejectsCoupledSpecs) {
  EXPECT_THROW(split_blocks(example72::spec()), SpecError);
  random::Engine rng(11);
  const auto s = random::restricted_spec(rng, example72::domain(), {}, false, false);
  if (s.couplings[0].weight != 0) EXPECT_THROW(split_blocks(s), SpecError);
}

TEST(CorruptSpec, FlagsAndRejects) {
  const auto id = FuncTable::identity(4);
  const auto s = theorem1_spec(4, 3, {id, id}, {id, id}, zeros(4, 3), {0, 1, 2});
  const auto c = corrupt_spec(s, 0, 1, LinkSide::first, FuncTable::constant(4, 0));
  EXPECT_TRUE(c.corrupted);
  EXPECT_EQ(build_code_set(c, IndexOrder::most_significant_first).meta().params.at("corrupted"), "true");
  EXPECT_THROW(corrupt_spec(s, 0, 0, LinkSide::second, FuncTable::affine(4, 3, 1)), SpecError);
  EXPECT_THROW(corrupt_spec(s, 0, 2, LinkSide::first, FuncTable::constant(4, 0)), SpecError);
  EXPECT_THROW(corrupt_spec(s, 0, 0, LinkSide::first, FuncTable::constant(6, 0)), SpecError);
}

TEST(CorruptSpec, MixedRadixLink) {
  random::Engine rng(12);
  const auto s = theorem2_spec(random::theorem2_params(rng, 2, 3, 2, 2));
  const auto c = corrupt_spec(s, 0, 0, LinkSide::first, FuncTable::constant(6, 0));
  EXPECT_TRUE(c.corrupted);
  const auto bad = random::nonpermutation_table(rng, 6, 3);
  EXPECT_TRUE(corrupt_spec(s, 1, 0, LinkSide::second, bad).corrupted);
}
