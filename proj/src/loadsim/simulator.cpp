#include "clirgate/loadsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

#include "clirgate/error.hpp"
#include "clirgate/translators/splitmix.hpp"

namespace clirgate::loadsim {

using gateway::Gateway;
using gateway::GatewayStats;
using gateway::LatencyHistogram;
using gateway::SlowJob;
using translators::Provenance;
using translators::VirtualClock;

Route parse_route(std::string_view text) {
  if (text == "dual") return Route::Dual;
  if (text == "fast_only") return Route::FastOnly;
  if (text == "slow_only") return Route::SlowOnly;
  throw Error(ErrorKind::InvalidArgument, "route must be dual, fast_only or slow_only");
}

RunMode parse_run_mode(std::string_view text) {
  if (text == "cold") return RunMode::Cold;
  if (text == "warmed") return RunMode::Warmed;
  throw Error(ErrorKind::InvalidArgument, "mode must be cold or warmed");
}

std::string_view to_string(Route route) noexcept {
  switch (route) {
    case Route::Dual: return "dual";
    case Route::FastOnly: return "fast_only";
    case Route::SlowOnly: return "slow_only";
  }
  return "unknown";
}

std::string_view to_string(RunMode mode) noexcept { return mode == RunMode::Cold ? "cold" : "warmed"; }

SimulationOptions SimulationOptions::from_json(const nlohmann::json& j) {
  SimulationOptions o;
  try {
    if (j.contains("route")) o.route = parse_route(j["route"].get<std::string>());
    if (j.contains("mode")) o.mode = parse_run_mode(j["mode"].get<std::string>());
    o.continuous_drain = j.value("continuous_drain", o.continuous_drain);
    if (j.contains("poisson_rate_per_s") && !j["poisson_rate_per_s"].is_null()) {
      o.poisson_rate_per_s = j["poisson_rate_per_s"].get<double>();
      if (!(*o.poisson_rate_per_s > 0)) throw Error(ErrorKind::InvalidArgument, "poisson rate must be positive");
    }
    o.seed = j.value("seed", o.seed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad simulation options: ") + e.what());
  }
  return o;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json histogram = nlohmann::json::array();
  for (std::size_t i = 0; i < LatencyHistogram::kBuckets; ++i) histogram.push_back(latency_histogram[i]);
  return {{"requests", requests},
          {"average_latency_ms", average_latency_ms},
          {"p50_latency_ms", p50_latency_ms},
          {"p95_latency_ms", p95_latency_ms},
          {"p99_latency_ms", p99_latency_ms},
          {"proportion_fast", proportion_fast},
          {"proportion_cache", proportion_cache},
          {"proportion_slow", proportion_slow},
          {"repetition_rate", repetition_rate},
          {"simulated_duration_ms", simulated_duration_ms},
          {"latency_histogram", histogram},
          {"stats", stats.to_json()}};
}

std::string RunReport::histogram_csv() const {
  std::string out = "bucket_low_ms,bucket_high_ms,count\n";
  char line[96];
  for (std::size_t i = 0; i < LatencyHistogram::kBuckets; ++i) {
    std::snprintf(line, sizeof(line), "%g,%g,%llu\n", LatencyHistogram::kEdges[i], LatencyHistogram::kEdges[i + 1],
                  static_cast<unsigned long long>(latency_histogram[i]));
    out += line;
  }
  return out;
}

namespace {

/// Latency samples plus per-source counts for one measured pass.
class Recorder {
 public:
  explicit Recorder(std::size_t expected) { latencies_.reserve(expected); }

  void add(double latency_ms, Provenance source) {
    latencies_.push_back(latency_ms);
    histogram_.record(latency_ms);
    switch (source) {
      case Provenance::Fast: ++fast_; break;
      case Provenance::Cache: ++cache_; break;
      case Provenance::Slow: ++slow_; break;
    }
  }

  RunReport finish(std::span<const std::string> queries, double duration_ms) {
    RunReport report;
    report.requests = latencies_.size();
    report.repetition_rate = repetition_rate(queries);
    report.simulated_duration_ms = duration_ms;
    report.latency_histogram = histogram_.counts();
    if (latencies_.empty()) return report;

    const double n = static_cast<double>(latencies_.size());
    double sum = 0;
    for (double l : latencies_) sum += l;
    report.average_latency_ms = sum / n;
    std::vector<double> sorted = latencies_;
    std::sort(sorted.begin(), sorted.end());
    auto nearest_rank = [&](double p) {
      auto rank = static_cast<std::size_t>(std::ceil(p * n));
      return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
    };
    report.p50_latency_ms = nearest_rank(0.50);
    report.p95_latency_ms = nearest_rank(0.95);
    report.p99_latency_ms = nearest_rank(0.99);
    report.proportion_fast = static_cast<double>(fast_) / n;
    report.proportion_cache = static_cast<double>(cache_) / n;
    report.proportion_slow = static_cast<double>(slow_) / n;
    return report;
  }

 private:
  std::vector<double> latencies_;
  LatencyHistogram histogram_;
  std::size_t fast_ = 0;
  std::size_t cache_ = 0;
  std::size_t slow_ = 0;
};

class ArrivalProcess {
 public:
  ArrivalProcess(const SimulationOptions& options, double start_ms)
      : rate_(options.poisson_rate_per_s), state_(options.seed), next_(start_ms) {}

  double next_arrival() const noexcept { return next_; }

  /// Advances past a request that arrived at next_arrival() and took `latency_ms`.
  void advance(double latency_ms) {
    if (!rate_) {
      next_ += latency_ms;
      return;
    }
    state_ = translators::splitmix64(state_);
    next_ += -std::log(translators::to_unit_open(state_)) / *rate_ * 1000.0;
  }

 private:
  std::optional<double> rate_;
  std::uint64_t state_;
  double next_;
};

struct InFlight {
  double done_at;
  std::uint64_t sequence;
  SlowJob job;

  bool operator>(const InFlight& other) const noexcept {
    return done_at != other.done_at ? done_at > other.done_at : sequence > other.sequence;
  }
};

/// The slow workers as a pool of `workers` servers on the virtual timeline.
class WorkerPool {
 public:
  WorkerPool(Gateway& gw, VirtualClock& clock, unsigned workers) : gw_(gw), clock_(clock), idle_(workers) {}

  void dispatch(double now) {
    while (idle_ > 0) {
      clock_.set_ms(now);
      auto job = gw_.begin_slow_job();
      if (!job) return;
      if (!job->translation) continue;  // dropped after retries; failures take no time
      events_.push(InFlight{now + job->latency_ms, sequence_++, std::move(*job)});
      --idle_;
    }
  }

  /// Completes every job finishing at or before `t`, refilling workers as they free up.
  void run_until(double t) {
    while (!events_.empty() && events_.top().done_at <= t) {
      InFlight next = events_.top();
      events_.pop();
      clock_.set_ms(next.done_at);
      gw_.complete_slow_job(next.job);
      ++idle_;
      last_completion_ = std::max(last_completion_, next.done_at);
      dispatch(next.done_at);
    }
  }

  void run_to_quiescence(double now) {
    dispatch(now);
    run_until(std::numeric_limits<double>::infinity());
  }

  double last_completion() const noexcept { return last_completion_; }

 private:
  Gateway& gw_;
  VirtualClock& clock_;
  unsigned idle_;
  std::uint64_t sequence_ = 0;
  double last_completion_ = 0;
  std::priority_queue<InFlight, std::vector<InFlight>, std::greater<>> events_;
};

GatewayStats subtract(const GatewayStats& after, const GatewayStats& before) {
  GatewayStats d = after;
  d.requests -= before.requests;
  d.cache_hits -= before.cache_hits;
  d.fast_served -= before.fast_served;
  d.failed_requests -= before.failed_requests;
  d.slow_invocations -= before.slow_invocations;
  d.slow_completions -= before.slow_completions;
  d.slow_failures -= before.slow_failures;
  d.slow_drops -= before.slow_drops;
  d.queue_drops -= before.queue_drops;
  d.dedup_skips -= before.dedup_skips;
  d.evictions -= before.evictions;
  for (std::size_t i = 0; i < d.latency_histogram.size(); ++i) d.latency_histogram[i] -= before.latency_histogram[i];
  return d;
}

/// One pass over the queries; returns the time the last request finished.
double replay(std::span<const std::string> queries, Gateway& gw, VirtualClock& clock, WorkerPool& pool,
              const SimulationOptions& options, double start_ms, Recorder* recorder) {
  ArrivalProcess arrivals(options, start_ms);
  double finished = start_ms;
  for (const auto& query : queries) {
    const double at = arrivals.next_arrival();
    if (options.continuous_drain) pool.run_until(at);
    clock.set_ms(at);
    double latency = 0;
    try {
      const auto result = gw.handle(query);
      latency = result.latency_ms;
      if (recorder) recorder->add(latency, result.source);
    } catch (const Error& e) {
      // Failed requests are counted by the gateway and excluded from latency.
      if (e.kind() != ErrorKind::BackendUnavailable && e.kind() != ErrorKind::EmptyAfterNormalization &&
          e.kind() != ErrorKind::InvalidEncoding) {
        throw;
      }
    }
    if (options.continuous_drain) pool.dispatch(at);
    finished = std::max(finished, at + latency);
    arrivals.advance(latency);
  }
  return finished;
}

}  // namespace

RunReport run(std::span<const std::string> queries, Gateway& gw, VirtualClock& clock,
              const SimulationOptions& options) {
  if (&gw.clock() != &clock) {
    throw Error(ErrorKind::InvalidArgument, "simulation clock must be the gateway's clock");
  }
  WorkerPool pool(gw, clock, gw.config().worker_count);
  double start = clock.now_ms();

  if (options.mode == RunMode::Warmed) {
    start = replay(queries, gw, clock, pool, options, start, nullptr);
    pool.run_to_quiescence(start);
    start = std::max(start, pool.last_completion());
  }

  const auto before = gw.stats();
  Recorder recorder(queries.size());
  const double end = replay(queries, gw, clock, pool, options, start, &recorder);
  pool.run_to_quiescence(end);

  auto report = recorder.finish(queries, end - start);
  report.stats = subtract(gw.stats(), before);
  clock.set_ms(std::max(end, pool.last_completion()));
  return report;
}

RunReport run_baseline(std::span<const std::string> queries, const translators::Translator& backend,
                       Provenance served_as, const SimulationOptions& options) {
  VirtualClock clock;
  ArrivalProcess arrivals(options, 0.0);
  Recorder recorder(queries.size());
  GatewayStats stats;
  double end = 0;
  for (const auto& raw : queries) {
    const double at = arrivals.next_arrival();
    clock.set_ms(at);
    double latency = 0;
    try {
      auto result = backend.translate(clickstream::normalize(raw), clock);
      latency = result.latency_ms;
      recorder.add(latency, served_as);
      ++stats.requests;
      if (served_as == Provenance::Fast) ++stats.fast_served;
      if (served_as == Provenance::Slow) {
        ++stats.slow_invocations;
        ++stats.slow_completions;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BackendUnavailable) throw;
      ++stats.failed_requests;
    }
    end = std::max(end, at + latency);
    arrivals.advance(latency);
  }
  auto report = recorder.finish(queries, end);
  stats.latency_histogram = report.latency_histogram;
  report.stats = stats;
  return report;
}

RunReport simulate(std::span<const std::string> queries, const SimulationSetup& setup,
                   const SimulationOptions& options) {
  if (!setup.fast || !setup.slow) {
    throw Error(ErrorKind::InvalidArgument, "simulation needs both backends");
  }
  switch (options.route) {
    case Route::FastOnly:
      return run_baseline(queries, *setup.fast, Provenance::Fast, options);
    case Route::SlowOnly:
      return run_baseline(queries, *setup.slow, Provenance::Slow, options);
    case Route::Dual:
      break;
  }
  auto clock = std::make_shared<VirtualClock>();
  Gateway gw(setup.gateway, setup.fast, setup.slow, clock);
  return run(queries, gw, *clock, options);
}

}  // namespace clirgate::loadsim
