#include <gtest/gtest.h>

#include "clirgate/clickstream/normalize.hpp"
#include "clirgate/corpus/manifest.hpp"
#include "error_matchers.hpp"
#include "temp_dir.hpp"

using namespace clirgate::corpus;
using clirgate::ErrorKind;
using clirgate::clickstream::normalize;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

std::vector<clirgate::miner::MinedPair> mined_pairs(std::size_t n) {
  std::vector<clirgate::miner::MinedPair> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto q = normalize("dotaz " + std::to_string(i));
    auto t = normalize("query " + std::to_string(i));
    out.push_back({q, t, {q, t, 20, 15}});
  }
  return out;
}

std::string base_corpus(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += "zdroj " + std::to_string(i) + "\tsource " + std::to_string(i) + "\n";
  return s;
}

std::size_t count_lines(const std::filesystem::path& p) {
  const auto text = slurp(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(Manifest, JointTrainingIsOneStageOfBasePlusMined) {
  TempDir dir;
  const auto base = dir.write("base.tsv", base_corpus(240));
  const auto m = build_manifest(base, mined_pairs(10), Strategy::JointTraining, {dir / "out", 1});
  EXPECT_EQ(m.strategy, Strategy::JointTraining);
  ASSERT_EQ(m.stages.size(), 1u);
  EXPECT_EQ(m.stages[0].count, 250u);
  EXPECT_EQ(m.stages[0].policy, kFromScratchPolicy);
  EXPECT_EQ(count_lines(m.stages[0].path), 250u);
}

TEST(Manifest, JointTrainingRepeatOversamplesMined) {
  TempDir dir;
  const auto base = dir.write("base.tsv", base_corpus(5));
  const auto m = build_manifest(base, mined_pairs(3), Strategy::JointTraining, {dir / "out", 4});
  EXPECT_EQ(m.mined_repeat, 4u);
  EXPECT_EQ(m.stages[0].count, 17u);
  EXPECT_EQ(count_lines(m.stages[0].path), 17u);
}

TEST(Manifest, FineTuningStagesBaseThenMined) {
  TempDir dir;
  const auto base = dir.write("base.tsv", base_corpus(240));
  const auto m = build_manifest(base, mined_pairs(10), Strategy::FineTuning, {dir / "out", 1});
  ASSERT_EQ(m.stages.size(), 2u);
  EXPECT_EQ(m.stages[0].count, 240u);
  EXPECT_EQ(m.stages[0].path, base);
  EXPECT_EQ(m.stages[1].count, 10u);
  EXPECT_EQ(m.stages[0].policy, kUntilConvergencePolicy);
  EXPECT_EQ(m.stages[1].policy, kUntilConvergencePolicy);
  EXPECT_EQ(slurp(m.stages[1].path), "dotaz 0\tquery 0\ndotaz 1\tquery 1\ndotaz 2\tquery 2\ndotaz 3\tquery 3\n"
                                     "dotaz 4\tquery 4\ndotaz 5\tquery 5\ndotaz 6\tquery 6\ndotaz 7\tquery 7\n"
                                     "dotaz 8\tquery 8\ndotaz 9\tquery 9\n");
}

TEST(Manifest, Errors) {
  TempDir dir;
  const auto base = dir.write("base.tsv", base_corpus(3));
  EXPECT_ERROR_KIND(build_manifest(base, {}, Strategy::JointTraining, {dir / "out", 1}), ErrorKind::EmptyMinedSet);
  EXPECT_ERROR_KIND(build_manifest(dir / "missing.tsv", mined_pairs(1), Strategy::FineTuning, {dir / "out", 1}),
                    ErrorKind::BaseCorpusUnreadable);
  const auto bad = dir.write("bad.tsv", "no tab here\n");
  EXPECT_ERROR_KIND(build_manifest(bad, mined_pairs(1), Strategy::JointTraining, {dir / "out", 1}),
                    ErrorKind::FormatError);
  EXPECT_ERROR_KIND(build_manifest(base, mined_pairs(1), Strategy::JointTraining, {dir / "out", 0}),
                    ErrorKind::InvalidArgument);
}

TEST(Manifest, JsonRoundTrip) {
  TempDir dir;
  const auto base = dir.write("base.tsv", base_corpus(4));
  const auto m = build_manifest(base, mined_pairs(2), Strategy::FineTuning, {dir / "out", 1});
  const auto json = m.to_json();
  EXPECT_NE(json.find("\"strategy\""), std::string::npos);
  EXPECT_NE(json.find("\"stages\""), std::string::npos);
  const auto back = CorpusManifest::from_json(json);
  EXPECT_EQ(back.strategy, m.strategy);
  EXPECT_EQ(back.stages, m.stages);
  EXPECT_ERROR_KIND(CorpusManifest::from_json("{\"strategy\":\"XX\",\"stages\":[]}"), ErrorKind::FormatError);
}

TEST(Manifest, StrategyNames) {
  EXPECT_EQ(parse_strategy("JT"), Strategy::JointTraining);
  EXPECT_EQ(parse_strategy("FT"), Strategy::FineTuning);
  EXPECT_ERROR_KIND(parse_strategy("XX"), ErrorKind::InvalidArgument);
}

TEST(Manifest, MinedTsvReadsBack) {
  TempDir dir;
  const auto path = dir.write("mined.tsv", "dítě rýma\trunny nose\t20\t15\t0.750000\n");
  const auto pairs = read_mined_tsv(path);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].translation.text(), "runny nose");
  EXPECT_EQ(pairs[0].stats.luv, 20u);
  const auto bad = dir.write("bad.tsv", "a\tb\n");
  EXPECT_ERROR_KIND(read_mined_tsv(bad), ErrorKind::FormatError);
}
