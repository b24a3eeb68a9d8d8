#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "clirgate/gateway/lru_cache.hpp"
#include "clirgate/gateway/slow_queue.hpp"
#include "clirgate/translators/translator.hpp"

namespace clirgate::gateway {

using translators::Clock;
using translators::NormalizedQuery;
using translators::Provenance;
using translators::TranslationResult;
using translators::Translator;

struct CacheEntry {
  std::string query;
  std::string translation;
  double inserted_at = 0;
};

using TranslationCache = LruCache<std::string, CacheEntry>;

struct GatewayConfig {
  std::size_t cache_capacity = 100'000;
  std::size_t queue_capacity = 10'000;
  unsigned slow_retry_limit = 2;
  unsigned worker_count = 4;
  /// Latency charged for the cache lookup on every request.
  double cache_lookup_ms = 0.0;

  void validate() const;
  nlohmann::json to_json() const;
  static GatewayConfig from_json(const nlohmann::json& j);
};

/// Fixed log-spaced latency buckets (ms): [0,1) [1,2) [2,5) ... [1000,inf).
class LatencyHistogram {
 public:
  static constexpr std::array<double, 12> kEdges{0, 1, 2, 5, 10, 20, 50, 100, 200, 500, 1000,
                                                 std::numeric_limits<double>::infinity()};
  static constexpr std::size_t kBuckets = kEdges.size() - 1;

  void record(double ms) noexcept;
  std::array<std::uint64_t, kBuckets> counts() const noexcept;

 private:
  std::array<std::atomic<std::uint64_t>, kBuckets> counts_{};
};

struct GatewayStats {
  std::uint64_t requests = 0;       // served successfully
  std::uint64_t cache_hits = 0;
  std::uint64_t fast_served = 0;
  std::uint64_t failed_requests = 0;  // fast backend errors, not in `requests`
  std::uint64_t slow_invocations = 0;
  std::uint64_t slow_completions = 0;
  std::uint64_t slow_failures = 0;  // individual failed attempts
  std::uint64_t slow_drops = 0;     // queries abandoned after exhausting retries
  std::uint64_t queue_drops = 0;    // misses not enqueued because the queue was full
  std::uint64_t dedup_skips = 0;    // misses whose query was already pending
  std::uint64_t evictions = 0;
  std::array<std::uint64_t, LatencyHistogram::kBuckets> latency_histogram{};

  nlohmann::json to_json() const;
};

/// Outcome of one slow-path translation; `translation` is empty when every
/// attempt failed and the query was dropped.
struct SlowJob {
  std::string query;
  std::optional<std::string> translation;
  double latency_ms = 0;
  unsigned attempts = 0;
};

/// Cache-first translation front end. A hit is served from the cache; a miss
/// is served synchronously by the fast backend and the query is queued for
/// the slow backend, whose result alone is ever written to the cache.
class Gateway {
 public:
  Gateway(GatewayConfig config, std::shared_ptr<const Translator> fast, std::shared_ptr<const Translator> slow,
          std::shared_ptr<Clock> clock);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  /// Never waits on the slow path. Throws EmptyAfterNormalization /
  /// InvalidEncoding for bad input and BackendUnavailable when the fast
  /// backend fails on a miss.
  TranslationResult handle(std::string_view raw);
  TranslationResult handle(const NormalizedQuery& query);

  /// Pops one queued query and runs it through the slow backend, retrying up
  /// to slow_retry_limit times. Returns nullopt if nothing is queued. The
  /// cache is not touched until complete_slow_job.
  std::optional<SlowJob> begin_slow_job();
  /// Writes a successful job into the cache and clears its pending mark.
  void complete_slow_job(const SlowJob& job);
  /// begin + complete; false when the queue was empty.
  bool slow_worker_step();

  /// Launches worker_count threads draining the queue (live serving).
  void start_workers();
  void stop_workers();
  /// Runs slow_worker_step until the queue is empty (single-threaded use).
  std::size_t drain();

  GatewayStats stats() const;
  const GatewayConfig& config() const noexcept { return config_; }
  TranslationCache& cache() noexcept { return cache_; }
  const TranslationCache& cache() const noexcept { return cache_; }
  const SlowQueue& queue() const noexcept { return queue_; }
  Clock& clock() noexcept { return *clock_; }

  void set_eviction_observer(std::function<void(const std::string&)> observer);

  void save_snapshot(const std::filesystem::path& path) const;
  /// Replaces the cache contents with a snapshot; insertion times reset to now.
  std::size_t restore_snapshot(const std::filesystem::path& path);

 private:
  SlowJob run_slow(std::string query);
  void insert_into_cache(const std::string& query, const std::string& translation);

  GatewayConfig config_;
  std::shared_ptr<const Translator> fast_;
  std::shared_ptr<const Translator> slow_;
  std::shared_ptr<Clock> clock_;
  TranslationCache cache_;
  SlowQueue queue_;
  std::function<void(const std::string&)> on_evict_;

  std::atomic<std::uint64_t> requests_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::uint64_t> fast_served_{0};
  std::atomic<std::uint64_t> failed_requests_{0};
  std::atomic<std::uint64_t> slow_invocations_{0};
  std::atomic<std::uint64_t> slow_completions_{0};
  std::atomic<std::uint64_t> slow_failures_{0};
  std::atomic<std::uint64_t> slow_drops_{0};
  std::atomic<std::uint64_t> queue_drops_{0};
  std::atomic<std::uint64_t> dedup_skips_{0};
  std::atomic<std::uint64_t> evictions_{0};
  LatencyHistogram latency_;

  std::vector<std::jthread> workers_;
};

}  // namespace clirgate::gateway
