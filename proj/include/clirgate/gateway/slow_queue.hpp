#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <unordered_set>

namespace clirgate::gateway {

/// Bounded FIFO of queries awaiting the slow backend, plus the set of queries
/// that are queued or being translated. A query stays "pending" from a
/// successful offer until release(), and a pending query is never queued twice.
class SlowQueue {
 public:
  enum class Offer { Enqueued, AlreadyPending, AlreadyCached, Full };

  explicit SlowQueue(std::size_t capacity);

  /// `cached` is evaluated under the queue lock, after the pending check;
  /// together with release-after-cache-write this closes the window where a
  /// finished query could be queued again.
  Offer offer(const std::string& query, const std::function<bool(const std::string&)>& cached = {});

  std::optional<std::string> try_pop();
  /// Blocks until a query is available or stop is requested.
  std::optional<std::string> wait_pop(std::stop_token stop);

  /// Clears the pending mark once a popped query is finished (or dropped).
  void release(const std::string& query);

  bool is_pending(const std::string& query) const;
  std::size_t queued() const;
  std::size_t pending() const;
  std::size_t capacity() const noexcept { return capacity_; }

 private:
  const std::size_t capacity_;
  mutable std::mutex mutex_;
  std::condition_variable_any ready_;
  std::deque<std::string> queue_;
  std::unordered_set<std::string> pending_;
};

}  // namespace clirgate::gateway
