#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clirgate/gateway/gateway.hpp"
#include "clirgate/loadsim/workload.hpp"
#include "clirgate/translators/clock.hpp"

namespace clirgate::loadsim {

/// Which system serves the requests: the cache-bridged gateway, or one
/// backend called synchronously for every request (the two baselines).
enum class Route { Dual, FastOnly, SlowOnly };

enum class RunMode {
  Cold,
  /// Replay the workload once, let the slow queue drain, then measure a second pass.
  Warmed,
};

Route parse_route(std::string_view text);
RunMode parse_run_mode(std::string_view text);
std::string_view to_string(Route route) noexcept;
std::string_view to_string(RunMode mode) noexcept;

struct SimulationOptions {
  Route route = Route::Dual;
  RunMode mode = RunMode::Cold;
  /// Slow workers run on the virtual timeline during the run. When false
  /// the queue is only drained between the warm-up and measured passes.
  bool continuous_drain = true;
  /// Open-loop Poisson arrivals at this rate; closed loop (back-to-back) when unset.
  std::optional<double> poisson_rate_per_s;
  std::uint64_t seed = 0;

  static SimulationOptions from_json(const nlohmann::json& j);
};

struct RunReport {
  std::size_t requests = 0;
  double average_latency_ms = 0;
  double p50_latency_ms = 0;
  double p95_latency_ms = 0;
  double p99_latency_ms = 0;
  double proportion_fast = 0;
  double proportion_cache = 0;
  /// Only non-zero for the SlowOnly baseline; the three proportions sum to 1.
  double proportion_slow = 0;
  double repetition_rate = 0;
  double simulated_duration_ms = 0;
  std::array<std::uint64_t, gateway::LatencyHistogram::kBuckets> latency_histogram{};
  gateway::GatewayStats stats;

  nlohmann::json to_json() const;
  /// `bucket_low_ms,bucket_high_ms,count`
  std::string histogram_csv() const;
};

/// Drives `gw` through `queries` on the virtual timeline owned by `clock`,
/// which must be the gateway's clock. Slow jobs are discrete events:
/// a job dispatched at t completes (and writes the cache) at t + its latency.
RunReport run(std::span<const std::string> queries, gateway::Gateway& gw, translators::VirtualClock& clock,
              const SimulationOptions& options);

/// Calls `backend` synchronously for every request; `served_as` picks which
/// proportion the requests count toward.
RunReport run_baseline(std::span<const std::string> queries, const translators::Translator& backend,
                       translators::Provenance served_as, const SimulationOptions& options);

struct SimulationSetup {
  gateway::GatewayConfig gateway;
  std::shared_ptr<const translators::Translator> fast;
  std::shared_ptr<const translators::Translator> slow;
};

/// Builds a fresh gateway on a new virtual clock and dispatches on options.route.
RunReport simulate(std::span<const std::string> queries, const SimulationSetup& setup,
                   const SimulationOptions& options);

}  // namespace clirgate::loadsim
