#include "clirgate/gateway/gateway.hpp"

#include <algorithm>
#include <fstream>

#include "clirgate/error.hpp"
#include "clirgate/gateway/snapshot.hpp"

namespace clirgate::gateway {

void GatewayConfig::validate() const {
  if (cache_capacity == 0) throw Error(ErrorKind::InvalidArgument, "cache_capacity must be positive");
  if (queue_capacity == 0) throw Error(ErrorKind::InvalidArgument, "queue_capacity must be positive");
  if (worker_count == 0) throw Error(ErrorKind::InvalidArgument, "worker_count must be positive");
  if (!(cache_lookup_ms >= 0)) throw Error(ErrorKind::InvalidArgument, "cache_lookup_ms must be >= 0");
}

nlohmann::json GatewayConfig::to_json() const {
  return {{"cache_capacity", cache_capacity},
          {"queue_capacity", queue_capacity},
          {"slow_retry_limit", slow_retry_limit},
          {"worker_count", worker_count},
          {"cache_lookup_ms", cache_lookup_ms}};
}

GatewayConfig GatewayConfig::from_json(const nlohmann::json& j) {
  GatewayConfig c;
  try {
    c.cache_capacity = j.value("cache_capacity", c.cache_capacity);
    c.queue_capacity = j.value("queue_capacity", c.queue_capacity);
    c.slow_retry_limit = j.value("slow_retry_limit", c.slow_retry_limit);
    c.worker_count = j.value("worker_count", c.worker_count);
    c.cache_lookup_ms = j.value("cache_lookup_ms", c.cache_lookup_ms);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::FormatError, std::string("bad gateway config: ") + e.what());
  }
  c.validate();
  return c;
}

void LatencyHistogram::record(double ms) noexcept {
  auto it = std::upper_bound(kEdges.begin(), kEdges.end(), std::max(ms, 0.0));
  auto bucket = static_cast<std::size_t>(std::distance(kEdges.begin(), it)) - 1;
  counts_[std::min(bucket, kBuckets - 1)].fetch_add(1, std::memory_order_relaxed);
}

std::array<std::uint64_t, LatencyHistogram::kBuckets> LatencyHistogram::counts() const noexcept {
  std::array<std::uint64_t, kBuckets> out{};
  for (std::size_t i = 0; i < kBuckets; ++i) out[i] = counts_[i].load(std::memory_order_relaxed);
  return out;
}

nlohmann::json GatewayStats::to_json() const {
  nlohmann::json histogram = nlohmann::json::array();
  for (std::size_t i = 0; i < LatencyHistogram::kBuckets; ++i) {
    const double high = LatencyHistogram::kEdges[i + 1];
    histogram.push_back({{"low_ms", LatencyHistogram::kEdges[i]},
                         {"high_ms", std::isinf(high) ? nlohmann::json("inf") : nlohmann::json(high)},
                         {"count", latency_histogram[i]}});
  }
  return {{"requests", requests},
          {"cache_hits", cache_hits},
          {"fast_served", fast_served},
          {"failed_requests", failed_requests},
          {"slow_invocations", slow_invocations},
          {"slow_completions", slow_completions},
          {"slow_failures", slow_failures},
          {"slow_drops", slow_drops},
          {"queue_drops", queue_drops},
          {"dedup_skips", dedup_skips},
          {"evictions", evictions},
          {"latency_histogram", histogram}};
}

Gateway::Gateway(GatewayConfig config, std::shared_ptr<const Translator> fast, std::shared_ptr<const Translator> slow,
                 std::shared_ptr<Clock> clock)
    : config_((config.validate(), config)),
      fast_(std::move(fast)),
      slow_(std::move(slow)),
      clock_(std::move(clock)),
      cache_(config_.cache_capacity),
      queue_(config_.queue_capacity) {
  if (!fast_ || !slow_ || !clock_) {
    throw Error(ErrorKind::InvalidArgument, "gateway needs a fast backend, a slow backend and a clock");
  }
}

Gateway::~Gateway() { stop_workers(); }

TranslationResult Gateway::handle(std::string_view raw) { return handle(clickstream::normalize(raw)); }

TranslationResult Gateway::handle(const NormalizedQuery& query) {
  const double started = clock_->now_ms();
  clock_->wait_ms(config_.cache_lookup_ms);
  auto elapsed = [&](double modeled) { return clock_->is_virtual() ? modeled : clock_->now_ms() - started; };

  if (auto hit = cache_.get(query.text())) {
    TranslationResult result{std::move(hit->translation), Provenance::Cache, elapsed(config_.cache_lookup_ms)};
    cache_hits_.fetch_add(1, std::memory_order_relaxed);
    requests_.fetch_add(1, std::memory_order_relaxed);
    latency_.record(result.latency_ms);
    return result;
  }

  switch (queue_.offer(query.text(), [this](const std::string& q) { return cache_.contains(q); })) {
    case SlowQueue::Offer::Enqueued:
    case SlowQueue::Offer::AlreadyCached:
      break;
    case SlowQueue::Offer::AlreadyPending:
      dedup_skips_.fetch_add(1, std::memory_order_relaxed);
      break;
    case SlowQueue::Offer::Full:
      queue_drops_.fetch_add(1, std::memory_order_relaxed);
      break;
  }

  TranslationResult result;
  try {
    result = fast_->translate(query, *clock_);
  } catch (const Error&) {
    failed_requests_.fetch_add(1, std::memory_order_relaxed);
    throw;
  }
  result.source = Provenance::Fast;
  result.latency_ms = elapsed(config_.cache_lookup_ms + result.latency_ms);
  fast_served_.fetch_add(1, std::memory_order_relaxed);
  requests_.fetch_add(1, std::memory_order_relaxed);
  latency_.record(result.latency_ms);
  return result;
}

SlowJob Gateway::run_slow(std::string query) {
  SlowJob job{std::move(query), std::nullopt, 0.0, 0};
  const auto normalized = clickstream::normalize(job.query);
  auto slow_clock = clock_->fork();
  while (job.attempts <= config_.slow_retry_limit) {
    ++job.attempts;
    slow_invocations_.fetch_add(1, std::memory_order_relaxed);
    try {
      auto result = slow_->translate(normalized, *slow_clock);
      job.translation = std::move(result.text);
      job.latency_ms += result.latency_ms;
      return job;
    } catch (const std::exception&) {
      slow_failures_.fetch_add(1, std::memory_order_relaxed);
    }
  }
  slow_drops_.fetch_add(1, std::memory_order_relaxed);
  queue_.release(job.query);
  return job;
}

std::optional<SlowJob> Gateway::begin_slow_job() {
  auto query = queue_.try_pop();
  if (!query) return std::nullopt;
  return run_slow(std::move(*query));
}

void Gateway::insert_into_cache(const std::string& query, const std::string& translation) {
  auto evicted = cache_.put(query, CacheEntry{query, translation, clock_->now_ms()});
  if (evicted) {
    evictions_.fetch_add(1, std::memory_order_relaxed);
    if (on_evict_) on_evict_(*evicted);
  }
}

void Gateway::complete_slow_job(const SlowJob& job) {
  if (!job.translation) return;
  insert_into_cache(job.query, *job.translation);
  // Release only after the write: a miss racing with this completion then
  // sees either the pending mark or the cached entry.
  queue_.release(job.query);
  slow_completions_.fetch_add(1, std::memory_order_relaxed);
}

bool Gateway::slow_worker_step() {
  auto job = begin_slow_job();
  if (!job) return false;
  complete_slow_job(*job);
  return true;
}

std::size_t Gateway::drain() {
  std::size_t steps = 0;
  while (slow_worker_step()) ++steps;
  return steps;
}

void Gateway::start_workers() {
  if (!workers_.empty()) return;
  for (unsigned i = 0; i < config_.worker_count; ++i) {
    workers_.emplace_back([this](std::stop_token stop) {
      while (auto query = queue_.wait_pop(stop)) {
        complete_slow_job(run_slow(std::move(*query)));
      }
    });
  }
}

void Gateway::stop_workers() {
  for (auto& w : workers_) w.request_stop();
  workers_.clear();
}

GatewayStats Gateway::stats() const {
  GatewayStats s;
  s.requests = requests_.load();
  s.cache_hits = cache_hits_.load();
  s.fast_served = fast_served_.load();
  s.failed_requests = failed_requests_.load();
  s.slow_invocations = slow_invocations_.load();
  s.slow_completions = slow_completions_.load();
  s.slow_failures = slow_failures_.load();
  s.slow_drops = slow_drops_.load();
  s.queue_drops = queue_drops_.load();
  s.dedup_skips = dedup_skips_.load();
  s.evictions = evictions_.load();
  s.latency_histogram = latency_.counts();
  return s;
}

void Gateway::set_eviction_observer(std::function<void(const std::string&)> observer) {
  on_evict_ = std::move(observer);
}

void Gateway::save_snapshot(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::UnreadableSource, "cannot write snapshot '" + path.string() + "'");
  write_snapshot(cache_, out);
}

std::size_t Gateway::restore_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open snapshot '" + path.string() + "'");
  const auto entries = read_snapshot(in);
  restore_into(cache_, entries, clock_->now_ms());
  return cache_.size();
}

}  // namespace clirgate::gateway
