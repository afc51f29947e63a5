#include <gtest/gtest.h>

#include <sstream>

#include "ccc/example72.hpp"
#include "ccc/io.hpp"

using namespace ccc;
using ccc::io::json;

namespace {

const std::filesystem::path kSamples = CCC_SAMPLES_DIR;

}  // namespace

TEST(Domain, ParseBothForms) {
  EXPECT_EQ(io::parse_domain(json::parse(R"({"blocks":[{"p":2,"m":3},{"p":3,"m":2}]})")), example72::domain());
  EXPECT_EQ(io::parse_domain(json::parse(R"({"q":4,"m":3})")), DomainSpec::uniform(4, 3));
  EXPECT_THROW(io::parse_domain(json::parse(R"({"p":4})")), io::ConfigError);
  const auto d = example72::domain();
  EXPECT_EQ(io::parse_domain(io::domain_to_json(d)), d);
}

TEST(Config, Example72MatchesLibrarySpec) {
  const auto c = io::build_from_config(io::read_json(kSamples / "example72.json"), kSamples);
  EXPECT_EQ(c.codes(), example72::build().codes());
}

TEST(Config, DeterministicUnderSeed) {
  const auto j = io::read_json(kSamples / "theorem2_p23.json");
  const auto a = io::code_set_to_json(io::build_from_config(j)).dump();
  const auto b = io::code_set_to_json(io::build_from_config(j)).dump();
  EXPECT_EQ(a, b);
  auto k = j;
  k["seed"] = 6;
  EXPECT_NE(io::code_set_to_json(io::build_from_config(k)).dump(), a);
}

TEST(Config, ArityErrors) {
  EXPECT_THROW(io::build_from_config(json::parse(R"({"construction":"theorem1","domain":{"q":3,"m":3},"restricted":[1]})")),
               io::ConfigError);
  EXPECT_THROW(io::build_from_config(json::parse(R"({"construction":"theorem2","domain":{"q":6,"m":2}})")),
               io::ConfigError);
  EXPECT_THROW(io::build_from_config(json::parse(R"({"construction":"corollary1","domain":{"blocks":[{"p":2,"m":2},{"p":3,"m":1}]}})")),
               io::ConfigError);
  EXPECT_THROW(io::build_from_config(json::parse(R"({"construction":"theorem1","domain":{"q":3,"m":2},"restricted":[7]})")),
               io::ConfigError);
  EXPECT_THROW(io::build_from_config(json::parse(
                   R"({"construction":"theorem1","domain":{"q":3,"m":2},"chains":[[{"first":[0,1],"second":"identity"}]]})")),
               io::ConfigError);
}

TEST(Config, NonPermutingChainNamesTheLink) {
  try {
    io::build_from_config(json::parse(
        R"({"construction":"theorem1","domain":{"q":3,"m":3},"chains":[[{"first":"identity","second":"identity"},{"first":"identity","second":[1,1,0]}]]})"));
    FAIL() << "expected SpecError";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("chain link 1 (second)"), std::string::npos) << e.what();
  }
}

TEST(Config, KroneckerOfFiles) {
  const auto c = io::build_from_config(io::read_json(kSamples / "kronecker_2x3.json"), kSamples);
  EXPECT_EQ(c.code_count(), 6u);
  EXPECT_EQ(c.length(), 36u);
  EXPECT_TRUE(verify_ccc(c).is_ccc);
}

TEST(Config, CorruptSection) {
  const auto j = io::read_json(kSamples / "corrupt_q4m3.json");
  const auto s = io::parse_spec(j, io::Construction::theorem1);
  EXPECT_TRUE(s.corrupted);
  const auto ev = necessity_probe(s);
  EXPECT_EQ(ev.outcome, ProbeOutcome::violation_found);
  EXPECT_EQ(ev.tau, 60);
}

TEST(CodeSetJson, RoundTripPreservesReport) {
  const auto c = example72::build();
  const auto text = io::code_set_to_json(c).dump();
  const auto back = io::code_set_from_json(json::parse(text));
  EXPECT_EQ(back, c);
  EXPECT_EQ(io::report_to_json(verify_ccc(back)), io::report_to_json(verify_ccc(c)));
}

TEST(CodeSetJson, NullEntries) {
  const CodeSet c(3, {{RootSequence(3, {1, RootSequence::kNull, 2})}});
  const auto j = io::code_set_to_json(c);
  EXPECT_TRUE(j["codes"][0][0][1].is_null());
  EXPECT_EQ(io::code_set_from_json(j), c);
}

TEST(CodeSetJson, Malformed) {
  EXPECT_THROW(io::code_set_from_json(json::parse(R"({"q":2})")), io::ConfigError);
  EXPECT_THROW(io::code_set_from_json(json::parse(R"({"q":2,"codes":[[[0,1]],[[0]]]})")), ShapeError);
  EXPECT_THROW(io::code_set_from_json(json::parse(R"({"q":2,"codes":[[[0,5]]]})")), DomainError);
  EXPECT_THROW(io::code_set_from_json(json::parse(R"({"q":2,"L":3,"codes":[[[0,1]]]})")), ShapeError);
}

TEST(ProfileCsv, ShapeAndPeakRow) {
  const auto c = example72::build();
  std::ostringstream out;
  io::write_profile_csv(out, correlation_profile(c.row(1), c.row(1)), 6);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 144u);
  EXPECT_EQ(rows[0], "tau,count_0,count_1,count_2,count_3,count_4,count_5,re,im,magnitude");
  EXPECT_EQ(rows[72], "0,864,0,0,0,0,0,864,0,864");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (i != 72) EXPECT_EQ(rows[i].substr(rows[i].size() - 6), ",0,0,0");
  }
}

TEST(ProfileCsv, SingleShiftForLengthOne) {
  const std::vector<RootSequence> row = {RootSequence(2, {1})};
  std::ostringstream out;
  io::write_profile_csv(out, correlation_profile(row, row), 2);
  EXPECT_EQ(out.str(), "tau,count_0,count_1,re,im,magnitude\n0,1,0,1,0,1\n");
}
