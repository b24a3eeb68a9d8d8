#pragma once

#include <cstddef>
#include <functional>
#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clirgate/error.hpp"

namespace clirgate::gateway {

/// Bounded LRU map. Every operation holds one mutex, so a write to a key is
/// atomic with respect to concurrent lookups of it.
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class LruCache {
 public:
  explicit LruCache(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) {
      throw Error(ErrorKind::InvalidArgument, "cache capacity must be positive");
    }
  }

  LruCache(const LruCache&) = delete;
  LruCache& operator=(const LruCache&) = delete;

  /// Returns a copy of the value and marks the key most recently used.
  std::optional<Value> get(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }

  /// Lookup without touching recency.
  std::optional<Value> peek(const Key& key) const {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second->second;
  }

  bool contains(const Key& key) const {
    std::lock_guard lock(mutex_);
    return index_.contains(key);
  }

  /// Inserts or overwrites (last write wins). When a new key arrives at
  /// capacity the least recently used entry is evicted first and returned.
  std::optional<Key> put(const Key& key, Value value) {
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) {
      it->second->second = std::move(value);
      order_.splice(order_.begin(), order_, it->second);
      return std::nullopt;
    }
    std::optional<Key> evicted;
    if (index_.size() >= capacity_) {
      evicted = std::move(order_.back().first);
      index_.erase(*evicted);
      order_.pop_back();
    }
    order_.emplace_front(key, std::move(value));
    index_.emplace(key, order_.begin());
    return evicted;
  }

  bool erase(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return false;
    order_.erase(it->second);
    index_.erase(it);
    return true;
  }

  void clear() {
    std::lock_guard lock(mutex_);
    index_.clear();
    order_.clear();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return index_.size();
  }

  std::size_t capacity() const noexcept { return capacity_; }

  /// Snapshot of all entries, least recently used first.
  std::vector<std::pair<Key, Value>> entries() const {
    std::lock_guard lock(mutex_);
    return {order_.rbegin(), order_.rend()};
  }

 private:
  using Node = std::pair<Key, Value>;

  const std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Node> order_;  // front = most recent
  std::unordered_map<Key, typename std::list<Node>::iterator, Hash> index_;
};

}  // namespace clirgate::gateway
