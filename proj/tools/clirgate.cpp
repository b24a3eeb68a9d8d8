// clirgate: query-translation mining, serving, simulation and evaluation.

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "app_config.hpp"
#include "clirgate/clickstream/ingest.hpp"
#include "clirgate/corpus/coverage.hpp"
#include "clirgate/corpus/manifest.hpp"
#include "clirgate/error.hpp"
#include "clirgate/gateway/gateway.hpp"
#include "clirgate/gateway/service.hpp"
#include "clirgate/ireval/report.hpp"
#include "clirgate/loadsim/simulator.hpp"
#include "clirgate/loadsim/synthetic_log.hpp"
#include "clirgate/loadsim/workload.hpp"
#include "clirgate/miner/filter.hpp"
#include "clirgate/miner/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace clirgate::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  AppConfig config;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--seed", common.seed, "Random seed (overrides the config)");
  cmd->add_option("--config", common.config_path, "JSON configuration file")->check(CLI::ExistingFile);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::UnreadableSource, "cannot write '" + path.string() + "'");
  out << content;
  if (!out.flush()) throw Error(ErrorKind::UnreadableSource, "failed writing '" + path.string() + "'");
}

template <typename T>
T pick(const std::optional<T>& flag, const json& section, const char* key, T fallback) {
  if (flag) return *flag;
  if (section.contains(key) && !section[key].is_null()) return section[key].get<T>();
  return fallback;
}

// mine

struct MineOptions {
  std::string log;
  std::string out;
  std::optional<std::string> format;
  std::optional<std::string> eta;
  std::optional<std::uint64_t> chi;
  std::optional<std::string> mode;
  std::optional<std::string> counting;
};

miner::MiningThresholds thresholds_from(const MineOptions& o, const json& section) {
  miner::MiningThresholds t;
  if (o.eta) {
    t.eta = Ratio::parse(*o.eta);
  } else if (section.contains("eta")) {
    t.eta = section["eta"].is_string() ? Ratio::parse(section["eta"].get<std::string>())
                                       : Ratio::from_double(section["eta"].get<double>());
  } else {
    t.eta = Ratio(7, 10);
  }
  t.chi = pick<std::uint64_t>(o.chi, section, "chi", 15);
  t.mode = miner::parse_mining_mode(pick<std::string>(o.mode, section, "mode", "top"));
  t.validate();
  return t;
}

miner::CountingMode counting_from(const std::string& text) {
  if (text == "distinct") return miner::CountingMode::DistinctUsers;
  if (text == "occurrence") return miner::CountingMode::PerOccurrence;
  throw Error(ErrorKind::InvalidArgument, "counting must be 'distinct' or 'occurrence'");
}

int run_mine(const MineOptions& o, const CommonOptions& common) {
  const auto& section = common.config.section("mine");
  const auto thresholds = thresholds_from(o, section);
  const auto format = clickstream::parse_log_format(pick<std::string>(o.format, section, "format", "tsv-v1"));
  const auto counting = counting_from(pick<std::string>(o.counting, section, "counting", "distinct"));

  const auto log = clickstream::ingest_file(o.log, format);
  const auto stats = miner::aggregate(log.records, counting);
  const auto mined = miner::filter(stats, thresholds);
  write_file(o.out, miner::to_mined_tsv(mined));

  json summary = {{"records", log.records.size()},
                  {"lines", log.lines},
                  {"skipped_lines", log.skipped},
                  {"pairs_in", stats.size()},
                  {"pairs_out", mined.size()},
                  {"eta", thresholds.eta.str()},
                  {"chi", thresholds.chi},
                  {"mode", miner::to_string(thresholds.mode)}};
  json histogram = json::array();
  if (!stats.empty()) {
    const std::vector<double> edges{0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    for (const auto& b : miner::distribution_report(stats, miner::ReportAxis::Ctr, edges)) {
      histogram.push_back({{"low", b.low}, {"high", b.high}, {"ratio", b.ratio}});
    }
  }
  summary["ctr_histogram"] = histogram;
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// report

struct ReportOptions {
  std::string log;
  std::optional<std::string> format;
  std::string axis = "luv";
  std::optional<std::string> edges;
  std::optional<std::string> out;
};

int run_report(const ReportOptions& o, const CommonOptions& common) {
  const auto& section = common.config.section("report");
  const auto format = clickstream::parse_log_format(pick<std::string>(o.format, section, "format", "tsv-v1"));
  const auto axis = miner::parse_report_axis(o.axis);
  const std::string default_edges = axis == miner::ReportAxis::Luv ? "0,5,15,inf" : "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  const auto edges = miner::parse_edges(pick<std::string>(o.edges, section, "edges", default_edges));

  const auto log = clickstream::ingest_file(o.log, format);
  const auto stats = miner::aggregate(log.records);
  const auto csv = miner::to_histogram_csv(miner::distribution_report(stats, axis, edges));
  if (o.out) {
    write_file(*o.out, csv);
  } else {
    std::cout << csv;
  }
  return kExitOk;
}

// build-corpus

struct CorpusOptions {
  std::string base;
  std::string mined;
  std::string strategy = "JT";
  std::string out_dir;
  std::size_t repeat = 1;
};

int run_corpus(const CorpusOptions& o, const CommonOptions&) {
  const auto mined = corpus::read_mined_tsv(o.mined);
  const auto manifest = corpus::build_manifest(o.base, mined, corpus::parse_strategy(o.strategy),
                                               corpus::ManifestOptions{o.out_dir, o.repeat});
  const auto text = manifest.to_json();
  write_file(fs::path(o.out_dir) / "manifest.json", text);
  std::cout << text;
  return kExitOk;
}

// coverage

struct CoverageOptions {
  std::string train;
  std::string test;
};

int run_coverage(const CoverageOptions& o, const CommonOptions&) {
  const auto coverage = corpus::word_coverage(fs::path(o.train), fs::path(o.test));
  json out = {{"coverage", coverage.to_double()}, {"covered_types", coverage.num()}, {"test_types", coverage.den()}};
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

// serve / simulate share backend construction

struct BackendOptions {
  std::optional<std::string> fast;
  std::optional<std::string> slow;
};

std::pair<std::shared_ptr<translators::SimulatedTranslator>, std::shared_ptr<translators::SimulatedTranslator>>
load_backends(const BackendOptions& o, const CommonOptions& common) {
  const auto& section = common.config.section("translators");
  auto spec_path = [&](const std::optional<std::string>& flag, const char* key) -> fs::path {
    if (flag) return *flag;
    if (section.contains(key)) return common.config.resolve(section[key].get<std::string>());
    throw Error(ErrorKind::InvalidArgument, std::string("no ") + key + " translator spec (use --" + key + ")");
  };
  auto fast_spec = translators::load_translator_spec(spec_path(o.fast, "fast"));
  auto slow_spec = translators::load_translator_spec(spec_path(o.slow, "slow"));
  if (common.seed) {
    fast_spec.seed = *common.seed;
    slow_spec.seed = *common.seed + 1;
  }
  return {std::make_shared<translators::SimulatedTranslator>(std::move(fast_spec), translators::Provenance::Fast),
          std::make_shared<translators::SimulatedTranslator>(std::move(slow_spec), translators::Provenance::Slow)};
}

gateway::GatewayConfig gateway_config_from(const CommonOptions& common) {
  return gateway::GatewayConfig::from_json(common.config.section("gateway"));
}

struct ServeOptions {
  BackendOptions backends;
  std::optional<std::string> host;
  std::optional<int> port;
  std::optional<std::string> snapshot_in;
  std::optional<std::string> snapshot_out;
};

gateway::TranslationService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const ServeOptions& o, const CommonOptions& common) {
  const auto& section = common.config.section("serve");
  auto [fast, slow] = load_backends(o.backends, common);
  auto clock = std::make_shared<translators::WallClock>();
  gateway::Gateway gw(gateway_config_from(common), fast, slow, clock);

  std::optional<std::string> snapshot_in = o.snapshot_in;
  if (!snapshot_in && section.contains("snapshot_in")) {
    snapshot_in = common.config.resolve(section["snapshot_in"].get<std::string>()).string();
  }
  if (snapshot_in) {
    std::cerr << "restored " << gw.restore_snapshot(*snapshot_in) << " cache entries\n";
  }

  gateway::TranslationService service(gw);
  const auto host = pick<std::string>(o.host, section, "host", "127.0.0.1");
  const int port = service.bind(host, pick<int>(o.port, section, "port", 8080));
  if (port < 0) throw Error(ErrorKind::UnreadableSource, "cannot bind " + host);
  gw.start_workers();
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "serving on http://" << host << ":" << port << "\n";
  service.serve();
  g_service = nullptr;
  gw.stop_workers();

  std::optional<std::string> snapshot_out = o.snapshot_out;
  if (!snapshot_out && section.contains("snapshot_out")) {
    snapshot_out = common.config.resolve(section["snapshot_out"].get<std::string>()).string();
  }
  if (snapshot_out) gw.save_snapshot(*snapshot_out);
  return kExitOk;
}

struct SimulateOptions {
  BackendOptions backends;
  std::optional<std::size_t> requests;
  std::optional<std::size_t> distinct;
  std::optional<double> zipf;
  std::optional<double> target_repetition;
  std::optional<std::string> trace;
  std::optional<std::string> route;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::string> histogram;
};

int run_simulate(const SimulateOptions& o, const CommonOptions& common) {
  auto workload_spec = loadsim::WorkloadSpec::from_json(common.config.section("workload"), fs::path{});
  if (const auto& w = common.config.section("workload"); w.contains("popularity") && w["popularity"].contains("path")) {
    workload_spec.popularity = loadsim::TracePopularity{common.config.resolve(w["popularity"]["path"].get<std::string>())};
  }
  if (o.requests) workload_spec.total_requests = *o.requests;
  if (o.distinct) workload_spec.distinct_queries = *o.distinct;
  if (o.zipf) workload_spec.popularity = loadsim::ZipfPopularity{*o.zipf};
  if (o.trace) workload_spec.popularity = loadsim::TracePopularity{*o.trace};
  if (o.target_repetition) workload_spec.target_repetition_rate = *o.target_repetition;
  if (common.seed) workload_spec.seed = *common.seed;

  auto options = loadsim::SimulationOptions::from_json(common.config.section("simulation"));
  if (o.route) options.route = loadsim::parse_route(*o.route);
  if (o.mode) options.mode = loadsim::parse_run_mode(*o.mode);
  if (common.seed) options.seed = *common.seed;

  auto [fast, slow] = load_backends(o.backends, common);
  const auto workload = loadsim::generate(workload_spec);
  const loadsim::SimulationSetup setup{gateway_config_from(common), fast, slow};
  const auto report = loadsim::simulate(workload.queries, setup, options);

  auto doc = report.to_json();
  doc["route"] = loadsim::to_string(options.route);
  doc["mode"] = loadsim::to_string(options.mode);
  if (workload.zipf_exponent) doc["zipf_exponent"] = *workload.zipf_exponent;
  const auto text = doc.dump(2) + "\n";
  if (o.out) {
    write_file(*o.out, text);
  } else {
    std::cout << text;
  }
  if (o.histogram) write_file(*o.histogram, report.histogram_csv());
  return kExitOk;
}

struct EvaluateOptions {
  std::string run;
  std::string qrels;
  std::optional<std::size_t> k;
  std::optional<std::size_t> map_depth;
  bool skip_missing = false;
  bool pr_curve = false;
  std::string system = "system";
  std::optional<std::string> out;
  std::optional<std::string> csv;
};

int run_evaluate(const EvaluateOptions& o, const CommonOptions& common) {
  const auto& section = common.config.section("evaluate");
  ireval::EvalOptions options;
  options.k = pick<std::size_t>(o.k, section, "k", 10);
  options.map_depth = pick<std::size_t>(o.map_depth, section, "map_depth", 1000);
  options.skip_missing_queries = o.skip_missing || section.value("skip_missing", false);
  if (options.k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");

  const auto report = ireval::evaluate(ireval::read_run(fs::path(o.run)), ireval::read_qrels(fs::path(o.qrels)),
                                       options, o.pr_curve || section.value("pr_curve", false));
  const auto text = report.to_json().dump(2) + "\n";
  if (o.out) {
    write_file(*o.out, text);
  } else {
    std::cout << text;
  }
  if (o.csv) {
    const std::pair<std::string, ireval::EvalReport> row{o.system, report};
    write_file(*o.csv, ireval::to_table_csv(std::span(&row, 1)));
  }
  return kExitOk;
}

struct SynthOptions {
  loadsim::ClickLogSpec spec;
  std::string out;
  std::string format = "tsv-v1";
};

int run_synth(SynthOptions o, const CommonOptions& common) {
  if (common.seed) o.spec.seed = *common.seed;
  const auto format = clickstream::parse_log_format(o.format);
  std::string text;
  for (const auto& r : loadsim::synthesize_click_log(o.spec)) {
    text += clickstream::to_log_line(r, format);
    text += '\n';
  }
  write_file(o.out, text);
  return kExitOk;
}

}  // namespace
}  // namespace clirgate::cli

int main(int argc, char** argv) {
  using namespace clirgate::cli;
  CLI::App app{"clirgate: clickthrough mining, query-translation serving and evaluation"};
  app.require_subcommand(1);

  CommonOptions common;
  std::function<int()> action;

  MineOptions mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine query translation pairs from a click log");
  add_common(mine_cmd, common);
  mine_cmd->add_option("--log", mine.log, "Click log")->required()->check(CLI::ExistingFile);
  mine_cmd->add_option("--out", mine.out, "Mined corpus TSV to write")->required();
  mine_cmd->add_option("--format", mine.format, "tsv-v1 or jsonl-v1");
  mine_cmd->add_option("--eta", mine.eta, "CTR threshold, e.g. 0.7 or 7/10");
  mine_cmd->add_option("--chi", mine.chi, "Minimum Luv");
  mine_cmd->add_option("--mode", mine.mode, "top (ctr >= eta) or bottom (ctr <= eta)");
  mine_cmd->add_option("--counting", mine.counting, "distinct (users) or occurrence");
  mine_cmd->callback([&] { action = [&] { return run_mine(mine, common); }; });

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Histogram of pairs over Luv or CTR");
  add_common(report_cmd, common);
  report_cmd->add_option("--log", report.log, "Click log")->required()->check(CLI::ExistingFile);
  report_cmd->add_option("--format", report.format, "tsv-v1 or jsonl-v1");
  report_cmd->add_option("--axis", report.axis, "luv or ctr");
  report_cmd->add_option("--edges", report.edges, "Comma-separated bucket edges, 'inf' allowed");
  report_cmd->add_option("--out", report.out, "CSV output (stdout if omitted)");
  report_cmd->callback([&] { action = [&] { return run_report(report, common); }; });

  CorpusOptions corpus;
  auto* corpus_cmd = app.add_subcommand("build-corpus", "Write a JT or FT training manifest");
  add_common(corpus_cmd, common);
  corpus_cmd->add_option("--base", corpus.base, "Base parallel corpus (source \\t target)")->required();
  corpus_cmd->add_option("--mined", corpus.mined, "Mined corpus TSV from `mine`")->required()->check(CLI::ExistingFile);
  corpus_cmd->add_option("--strategy", corpus.strategy, "JT or FT");
  corpus_cmd->add_option("--out-dir", corpus.out_dir, "Output directory")->required();
  corpus_cmd->add_option("--repeat", corpus.repeat, "Times each mined pair is written into a JT stage");
  corpus_cmd->callback([&] { action = [&] { return run_corpus(corpus, common); }; });

  CoverageOptions coverage;
  auto* coverage_cmd = app.add_subcommand("coverage", "Word-type coverage of a test corpus by a training corpus");
  add_common(coverage_cmd, common);
  coverage_cmd->add_option("--train", coverage.train, "Training corpus (source \\t target)")->required()->check(CLI::ExistingFile);
  coverage_cmd->add_option("--test", coverage.test, "Test corpus (source \\t target)")->required()->check(CLI::ExistingFile);
  coverage_cmd->callback([&] { action = [&] { return run_coverage(coverage, common); }; });

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve translations over HTTP");
  add_common(serve_cmd, common);
  serve_cmd->add_option("--fast", serve.backends.fast, "Fast translator spec JSON");
  serve_cmd->add_option("--slow", serve.backends.slow, "Slow translator spec JSON");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "0 picks a free port");
  serve_cmd->add_option("--snapshot-in", serve.snapshot_in, "Warm the cache from a snapshot");
  serve_cmd->add_option("--snapshot-out", serve.snapshot_out, "Write the cache here on shutdown");
  serve_cmd->callback([&] { action = [&] { return run_serve(serve, common); }; });

  SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Replay a synthetic workload on a virtual clock");
  add_common(simulate_cmd, common);
  simulate_cmd->add_option("--fast", simulate.backends.fast, "Fast translator spec JSON");
  simulate_cmd->add_option("--slow", simulate.backends.slow, "Slow translator spec JSON");
  simulate_cmd->add_option("--requests", simulate.requests);
  simulate_cmd->add_option("--distinct", simulate.distinct, "Size of the query pool");
  simulate_cmd->add_option("--zipf", simulate.zipf, "Zipf exponent");
  simulate_cmd->add_option("--target-repetition", simulate.target_repetition, "Solve the Zipf exponent for this rate");
  simulate_cmd->add_option("--trace", simulate.trace, "Replay raw queries from a file");
  simulate_cmd->add_option("--route", simulate.route, "dual, fast_only or slow_only");
  simulate_cmd->add_option("--mode", simulate.mode, "cold or warmed");
  simulate_cmd->add_option("--out", simulate.out, "RunReport JSON (stdout if omitted)");
  simulate_cmd->add_option("--histogram", simulate.histogram, "Latency histogram CSV");
  simulate_cmd->callback([&] { action = [&] { return run_simulate(simulate, common); }; });

  EvaluateOptions evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a ranked run against relevance judgments");
  add_common(evaluate_cmd, common);
  evaluate_cmd->add_option("--run", evaluate.run, "query doc rank score")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--qrels", evaluate.qrels, "query 0 doc relevance")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--k", evaluate.k, "Cutoff for P@k and NDCG@k");
  evaluate_cmd->add_option("--map-depth", evaluate.map_depth, "Rank cutoff for AP");
  evaluate_cmd->add_flag("--skip-missing", evaluate.skip_missing, "Skip judged queries missing from the run");
  evaluate_cmd->add_flag("--pr-curve", evaluate.pr_curve, "Include the 11-point P-R curve");
  evaluate_cmd->add_option("--system", evaluate.system, "System name for the CSV row");
  evaluate_cmd->add_option("--out", evaluate.out, "Report JSON (stdout if omitted)");
  evaluate_cmd->add_option("--csv", evaluate.csv, "Table CSV: system,P@k,MAP,NDCG@k");
  evaluate_cmd->callback([&] { action = [&] { return run_evaluate(evaluate, common); }; });

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-log", "Generate a synthetic Zipf-distributed click log");
  add_common(synth_cmd, common);
  synth_cmd->add_option("--records", synth.spec.records, "Log records to write");
  synth_cmd->add_option("--users", synth.spec.users, "Distinct users");
  synth_cmd->add_option("--pairs", synth.spec.pairs, "Distinct query/translation pairs");
  synth_cmd->add_option("--zipf", synth.spec.zipf_exponent, "Zipf exponent of pair popularity");
  synth_cmd->add_option("--format", synth.format, "tsv-v1 or jsonl-v1");
  synth_cmd->add_option("--out", synth.out, "Click log to write")->required();
  synth_cmd->callback([&] { action = [&] { return run_synth(synth, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!common.config_path.empty()) common.config = AppConfig::load(common.config_path);
    return action();
  } catch (const clirgate::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == clirgate::ErrorKind::InvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
