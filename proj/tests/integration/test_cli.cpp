#include <gtest/gtest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "clirgate/miner/filter.hpp"
#include "temp_dir.hpp"

using nlohmann::json;
using testing_support::slurp;
using testing_support::TempDir;

namespace {

struct Outcome {
  int exit_code;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string command = std::string(CLIRGATE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::vector<std::vector<std::string>> tsv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> fields;
    std::istringstream fs(line);
    for (std::string f; std::getline(fs, f, '\t');) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    log_ = dir_ / "clicks.tsv";
    ASSERT_EQ(cli("synth-log --records 10000 --users 300 --pairs 400 --seed 5 --out " + q(log_)).exit_code, 0);
  }
  TempDir dir_;
  std::filesystem::path log_;
};

}  // namespace

TEST_F(CliTest, MineTopRowsSatisfyThresholds) {
  const auto out = dir_ / "top.tsv";
  const auto r = cli("mine --log " + q(log_) + " --eta 0.7 --chi 15 --mode top --out " + q(out));
  ASSERT_EQ(r.exit_code, 0);
  const auto summary = json::parse(r.out);
  EXPECT_EQ(summary["records"], 10000);
  const auto rows = tsv_rows(slurp(out));
  EXPECT_EQ(summary["pairs_out"], rows.size());
  EXPECT_GT(rows.size(), 0u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 5u);
    const auto luv = std::stoull(row[2]);
    const auto duv = std::stoull(row[3]);
    EXPECT_GE(luv, 15u);
    EXPECT_GE(duv * 10, luv * 7);
  }
}

TEST_F(CliTest, MineBottomDisjointFromTop) {
  const auto top = dir_ / "top.tsv";
  const auto bottom = dir_ / "bottom.tsv";
  ASSERT_EQ(cli("mine --log " + q(log_) + " --eta 0.7 --chi 15 --mode top --out " + q(top)).exit_code, 0);
  ASSERT_EQ(cli("mine --log " + q(log_) + " --eta 0.3 --chi 15 --mode bottom --out " + q(bottom)).exit_code, 0);
  std::set<std::pair<std::string, std::string>> top_keys;
  for (const auto& row : tsv_rows(slurp(top))) top_keys.emplace(row[0], row[1]);
  const auto bottom_rows = tsv_rows(slurp(bottom));
  EXPECT_GT(bottom_rows.size(), 0u);
  for (const auto& row : bottom_rows) {
    EXPECT_FALSE(top_keys.contains({row[0], row[1]}));
    EXPECT_LE(std::stoull(row[3]) * 10, std::stoull(row[2]) * 3);
  }
}

TEST_F(CliTest, MineEmptyLog) {
  const auto empty = dir_ / "empty.tsv";
  testing_support::TempDir scratch;
  std::ofstream(empty).close();
  const auto out = dir_ / "mined.tsv";
  const auto r = cli("mine --log " + q(empty) + " --out " + q(out));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["pairs_out"], 0);
  EXPECT_EQ(json::parse(r.out)["pairs_in"], 0);
  EXPECT_EQ(slurp(out), "");
}

TEST_F(CliTest, MineIsByteIdenticalAcrossRuns) {
  const auto a = dir_ / "a.tsv";
  const auto b = dir_ / "b.tsv";
  ASSERT_EQ(cli("mine --log " + q(log_) + " --chi 2 --out " + q(a)).exit_code, 0);
  ASSERT_EQ(cli("mine --log " + q(log_) + " --chi 2 --out " + q(b)).exit_code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, ConfigFileSuppliesThresholdsAndFlagsOverride) {
  const auto config = dir_.write("mine.json", R"({"mine": {"eta": "1/2", "chi": 3, "mode": "bottom"}})");
  const auto r = cli("mine --config " + q(config) + " --log " + q(log_) + " --out " + q(dir_ / "m.tsv"));
  ASSERT_EQ(r.exit_code, 0);
  auto summary = json::parse(r.out);
  EXPECT_EQ(summary["eta"], "1/2");
  EXPECT_EQ(summary["chi"], 3);
  EXPECT_EQ(summary["mode"], "bottom");
  summary = json::parse(cli("mine --config " + q(config) + " --chi 9 --log " + q(log_) + " --out " +
                            q(dir_ / "m.tsv")).out);
  EXPECT_EQ(summary["chi"], 9);
}

TEST_F(CliTest, ReportZipfLogMostlyLowLuv) {
  const auto big = dir_ / "zipf.tsv";
  ASSERT_EQ(cli("synth-log --records 50000 --users 5000 --pairs 50000 --zipf 1.1 --seed 3 --out " + q(big)).exit_code,
            0);
  const auto r = cli("report --log " + q(big) + " --axis luv --edges 0,5,15,inf");
  ASSERT_EQ(r.exit_code, 0);
  std::istringstream csv(r.out);
  std::string header;
  std::string first;
  std::getline(csv, header);
  std::getline(csv, first);
  EXPECT_EQ(header, "bucket_low,bucket_high,ratio");
  EXPECT_EQ(first.rfind("0,5,", 0), 0u);
  EXPECT_GT(std::stod(first.substr(4)), 0.8);
}

TEST_F(CliTest, BuildCorpusJointAndFineTune) {
  const auto mined = dir_ / "mined.tsv";
  ASSERT_EQ(cli("mine --log " + q(log_) + " --chi 2 --eta 0.5 --out " + q(mined)).exit_code, 0);
  const auto mined_count = tsv_rows(slurp(mined)).size();
  ASSERT_GT(mined_count, 0u);
  std::string base;
  for (int i = 0; i < 100; ++i) base += "zdroj " + std::to_string(i) + "\tsource " + std::to_string(i) + "\n";
  const auto base_path = dir_.write("base.tsv", base);

  auto r = cli("build-corpus --base " + q(base_path) + " --mined " + q(mined) + " --strategy JT --out-dir " +
               q(dir_ / "jt"));
  ASSERT_EQ(r.exit_code, 0);
  auto manifest = json::parse(slurp(dir_ / "jt" / "manifest.json"));
  ASSERT_EQ(manifest["stages"].size(), 1u);
  EXPECT_EQ(manifest["stages"][0]["count"], 100 + mined_count);

  r = cli("build-corpus --base " + q(base_path) + " --mined " + q(mined) + " --strategy FT --out-dir " +
          q(dir_ / "ft"));
  ASSERT_EQ(r.exit_code, 0);
  manifest = json::parse(slurp(dir_ / "ft" / "manifest.json"));
  ASSERT_EQ(manifest["stages"].size(), 2u);
  EXPECT_EQ(manifest["stages"][0]["count"], 100);
  EXPECT_EQ(manifest["stages"][1]["count"], mined_count);
}

TEST_F(CliTest, Coverage) {
  const auto train = dir_.write("train.tsv", "a b c\tx\n");
  const auto test = dir_.write("test.tsv", "a b\ty\nd\tz\n");
  const auto r = cli("coverage --train " + q(train) + " --test " + q(test));
  ASSERT_EQ(r.exit_code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["covered_types"], 2);
  EXPECT_EQ(j["test_types"], 3);
}

TEST_F(CliTest, SimulateDeskConfig) {
  const auto out = dir_ / "report.json";
  const auto hist = dir_ / "hist.csv";
  const auto r = cli("simulate --config " + q(std::filesystem::path(CLIRGATE_CONFIGS) / "desk.json") +
                     " --out " + q(out) + " --histogram " + q(hist));
  ASSERT_EQ(r.exit_code, 0);
  const auto report = json::parse(slurp(out));
  EXPECT_GE(report["proportion_cache"].get<double>(), 0.85);
  EXPECT_LE(report["proportion_cache"].get<double>(), 0.95);
  EXPECT_LE(report["average_latency_ms"].get<double>(), 15.0);
  EXPECT_EQ(report["requests"], 100000);
  EXPECT_EQ(slurp(hist).rfind("bucket_low_ms,bucket_high_ms,count\n", 0), 0u);

  const auto again = dir_ / "again.json";
  ASSERT_EQ(cli("simulate --config " + q(std::filesystem::path(CLIRGATE_CONFIGS) / "desk.json") + " --out " +
                q(again)).exit_code,
            0);
  EXPECT_EQ(slurp(out), slurp(again));
}

TEST_F(CliTest, EvaluatePerfectRun) {
  std::string run;
  std::string qrels;
  for (int qn = 1; qn <= 3; ++qn) {
    for (int d = 1; d <= 10; ++d) {
      run += "q" + std::to_string(qn) + " d" + std::to_string(d) + " " + std::to_string(d) + " " +
             std::to_string(1.0 / d) + "\n";
      qrels += "q" + std::to_string(qn) + " 0 d" + std::to_string(d) + " 1\n";
    }
  }
  const auto run_path = dir_.write("run.txt", run);
  const auto qrels_path = dir_.write("qrels.txt", qrels);
  const auto csv = dir_ / "table.csv";
  const auto r = cli("evaluate --run " + q(run_path) + " --qrels " + q(qrels_path) + " --pr-curve --system perfect --csv " +
                     q(csv));
  ASSERT_EQ(r.exit_code, 0);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["mean_precision_at_k"], 1.0);
  EXPECT_EQ(report["map"], 1.0);
  EXPECT_EQ(report["mean_ndcg_at_k"], 1.0);
  EXPECT_EQ(slurp(csv), "system,P@10,MAP,NDCG@10\nperfect,1.0000,1.0000,1.0000\n");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(cli("").exit_code, 1);
  EXPECT_EQ(cli("frobnicate").exit_code, 1);
  EXPECT_EQ(cli("mine --log /nonexistent --out x").exit_code, 1);
  EXPECT_EQ(cli("mine --log " + q(log_) + " --eta 1.5 --out " + q(dir_ / "x.tsv")).exit_code, 1);
  const auto qrels = dir_.write("qrels.txt", "q1 0 d1 0\n");
  const auto run = dir_.write("run.txt", "q1 d1 1 1.0\n");
  EXPECT_EQ(cli("evaluate --run " + q(run) + " --qrels " + q(qrels)).exit_code, 2);  // NoJudgedQueries
  const auto config = dir_.write("bad.json", R"({"translators": {"fast": "missing.json"}})");
  EXPECT_EQ(cli("simulate --config " + q(config)).exit_code, 1);
  EXPECT_EQ(cli("mine --help").exit_code, 0);
}
