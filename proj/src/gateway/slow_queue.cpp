#include "clirgate/gateway/slow_queue.hpp"

#include "clirgate/error.hpp"

namespace clirgate::gateway {

SlowQueue::SlowQueue(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) {
    throw Error(ErrorKind::InvalidArgument, "queue capacity must be positive");
  }
}

SlowQueue::Offer SlowQueue::offer(const std::string& query, const std::function<bool(const std::string&)>& cached) {
  {
    std::lock_guard lock(mutex_);
    if (pending_.contains(query)) return Offer::AlreadyPending;
    if (cached && cached(query)) return Offer::AlreadyCached;
    if (queue_.size() >= capacity_) return Offer::Full;
    queue_.push_back(query);
    pending_.insert(query);
  }
  ready_.notify_one();
  return Offer::Enqueued;
}

std::optional<std::string> SlowQueue::try_pop() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  auto query = std::move(queue_.front());
  queue_.pop_front();
  return query;
}

std::optional<std::string> SlowQueue::wait_pop(std::stop_token stop) {
  std::unique_lock lock(mutex_);
  if (!ready_.wait(lock, stop, [this] { return !queue_.empty(); })) return std::nullopt;
  auto query = std::move(queue_.front());
  queue_.pop_front();
  return query;
}

void SlowQueue::release(const std::string& query) {
  std::lock_guard lock(mutex_);
  pending_.erase(query);
}

bool SlowQueue::is_pending(const std::string& query) const {
  std::lock_guard lock(mutex_);
  return pending_.contains(query);
}

std::size_t SlowQueue::queued() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::size_t SlowQueue::pending() const {
  std::lock_guard lock(mutex_);
  return pending_.size();
}

}  // namespace clirgate::gateway
