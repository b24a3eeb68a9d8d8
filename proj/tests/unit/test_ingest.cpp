#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "clirgate/clickstream/click_record.hpp"
#include "clirgate/clickstream/ingest.hpp"
#include "error_matchers.hpp"
#include "temp_dir.hpp"

using namespace clirgate::clickstream;
using clirgate::ErrorKind;

namespace {

IngestResult ingest_text(const std::string& text, LogFormat format = LogFormat::TsvV1) {
  std::istringstream in(text);
  return ingest(in, format);
}

}  // namespace

TEST(Ingest, TsvLineMapsFields) {
  const auto r = ingest_text("u7\tčtyřměsíční dítě rýma\tfour-month-old runny nose\t2\n");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0], make_record("u7", "čtyřměsíční dítě rýma", "four-month-old runny nose", 2));
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Ingest, NegativeClicksSkipped) {
  const auto r = ingest_text("u1\tq\tt\t-1\nu2\tq\tt\t0\n");
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_EQ(r.lines, 2u);
}

TEST(Ingest, EmptyFile) {
  const auto r = ingest_text("");
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.lines, 0u);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Ingest, MalformedLinesAreCountedNotFatal) {
  const std::string text =
      "u1\tq\tt\n"           // three fields
      "u1\tq\tt\t1\textra\n"  // five fields
      "u1\tq\tt\tx\n"         // non-numeric clicks
      "u1\tq\tt\t+1\n"        // sign
      "u1\t  \tt\t1\n"        // empty query after normalization
      "\tq\tt\t1\n"           // empty user
      "u1\tq\xFF\tt\t1\n"     // bad UTF-8
      "u1\tq\tt\t99999999999999999999999\n"  // overflow
      "u1\tq\tt\t3\r\n";      // valid, CRLF
  const auto r = ingest_text(text);
  EXPECT_EQ(r.lines, 9u);
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.skipped, 8u);
  EXPECT_EQ(r.records[0].clicks, 3u);
}

TEST(Ingest, BlankLinesIgnored) {
  const auto r = ingest_text("\nu1\tq\tt\t1\n\n");
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.lines, 1u);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Ingest, JsonlFormat) {
  const auto r = ingest_text(
      "{\"u\":\"u7\",\"q\":\"Dítě  Rýma\",\"t\":\"runny nose\",\"c\":2}\n"
      "{\"u\":\"u8\",\"q\":\"x\",\"t\":\"y\",\"c\":-1}\n"
      "[1,2]\n"
      "{\"u\":\"u9\",\"q\":\"x\"}\n"
      "not json\n",
      LogFormat::JsonlV1);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].query.text(), "dítě rýma");
  EXPECT_EQ(r.skipped, 4u);
}

TEST(Ingest, FormatTags) {
  EXPECT_EQ(parse_log_format("tsv-v1"), LogFormat::TsvV1);
  EXPECT_EQ(parse_log_format("jsonl-v1"), LogFormat::JsonlV1);
  EXPECT_ERROR_KIND(parse_log_format("csv"), ErrorKind::FormatError);
}

TEST(Ingest, MissingFileIsUnreadable) {
  EXPECT_ERROR_KIND(ingest_file("/nonexistent/clicks.tsv", LogFormat::TsvV1), ErrorKind::UnreadableSource);
}

TEST(Ingest, ReadsFromFile) {
  testing_support::TempDir dir;
  const auto path = dir.write("log.tsv", "a\tq\tt\t1\nb\tq\tt\t0\n");
  const auto r = ingest_file(path, LogFormat::TsvV1);
  EXPECT_EQ(r.records.size(), 2u);
}

TEST(Ingest, UserIdValidation) {
  EXPECT_ERROR_KIND(make_record("", "q", "t", 0), ErrorKind::InvalidArgument);
  EXPECT_ERROR_KIND(make_record("a\tb", "q", "t", 0), ErrorKind::InvalidArgument);
}

TEST(Ingest, ConservationAndRoundTripOnRandomLogs) {
  std::mt19937_64 rng(42);
  const std::vector<std::string> words{"Dítě", "rýma", "RUNNY", "nose", "čtyřměsíční", "fever", "x"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string tsv;
    std::string jsonl;
    std::size_t valid = 0;
    std::size_t bad = 0;
    const int lines = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < lines; ++i) {
      auto phrase = [&] {
        std::string s;
        const int n = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int w = 0; w < n; ++w) s += (w ? "  " : " ") + words[rng() % words.size()];
        return s;
      };
      const auto user = "u" + std::to_string(rng() % 10);
      if (rng() % 5 == 0) {
        tsv += user + "\t" + phrase() + "\n";
        ++bad;
      } else {
        auto rec = make_record(user, phrase(), phrase(), rng() % 4);
        tsv += to_log_line(rec, LogFormat::TsvV1) + "\n";
        jsonl += to_log_line(rec, LogFormat::JsonlV1) + "\n";
        ++valid;
      }
    }
    const auto r = ingest_text(tsv);
    EXPECT_EQ(r.lines, valid + bad);
    EXPECT_EQ(r.records.size() + r.skipped, r.lines);
    EXPECT_EQ(r.skipped, bad);

    const auto j = ingest_text(jsonl, LogFormat::JsonlV1);
    EXPECT_EQ(j.skipped, 0u);
    EXPECT_EQ(j.records, r.records);

    std::string again;
    for (const auto& rec : r.records) again += to_log_line(rec, LogFormat::TsvV1) + "\n";
    EXPECT_EQ(ingest_text(again).records, r.records);
  }
}
