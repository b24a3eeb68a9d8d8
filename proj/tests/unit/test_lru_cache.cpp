#include <gtest/gtest.h>

#include <thread>

#include "clirgate/gateway/lru_cache.hpp"
#include "error_matchers.hpp"

using clirgate::ErrorKind;
using clirgate::gateway::LruCache;

TEST(LruCache, EvictsLeastRecentlyUsed) {
  LruCache<std::string, int> cache(2);
  cache.put("a", 1);
  cache.put("b", 2);
  ASSERT_TRUE(cache.get("a"));  // b is now least recent
  const auto evicted = cache.put("c", 3);
  ASSERT_TRUE(evicted);
  EXPECT_EQ(*evicted, "b");
  EXPECT_TRUE(cache.contains("a"));
  EXPECT_FALSE(cache.contains("b"));
  EXPECT_EQ(cache.size(), 2u);
}

TEST(LruCache, PeekDoesNotTouchRecency) {
  LruCache<std::string, int> cache(2);
  cache.put("a", 1);
  cache.put("b", 2);
  EXPECT_EQ(cache.peek("a"), 1);
  EXPECT_EQ(cache.put("c", 3), std::optional<std::string>("a"));
}

TEST(LruCache, OverwriteIsLastWriteWinsWithoutEviction) {
  LruCache<std::string, int> cache(2);
  cache.put("a", 1);
  cache.put("b", 2);
  EXPECT_FALSE(cache.put("a", 10));
  EXPECT_EQ(cache.peek("a"), 10);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(LruCache, EntriesOldestFirstAndErase) {
  LruCache<std::string, int> cache(3);
  cache.put("a", 1);
  cache.put("b", 2);
  cache.put("c", 3);
  cache.get("a");
  const auto entries = cache.entries();
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].first, "b");
  EXPECT_EQ(entries[2].first, "a");
  EXPECT_TRUE(cache.erase("b"));
  EXPECT_FALSE(cache.erase("b"));
  cache.clear();
  EXPECT_EQ(cache.size(), 0u);
}

TEST(LruCache, ZeroCapacityRejected) {
  EXPECT_ERROR_KIND((LruCache<std::string, int>(0)), ErrorKind::InvalidArgument);
}

TEST(LruCache, ConcurrentAccessKeepsBound) {
  LruCache<int, int> cache(64);
  {
    std::vector<std::jthread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (int i = 0; i < 20'000; ++i) {
          const int key = (i * 7 + t) % 200;
          if (i % 3 == 0) {
            cache.put(key, key * 2);
          } else if (auto v = cache.get(key)) {
            if (*v != key * 2) std::abort();
          }
        }
      });
    }
  }
  EXPECT_LE(cache.size(), 64u);
  for (const auto& [k, v] : cache.entries()) EXPECT_EQ(v, k * 2);
}
