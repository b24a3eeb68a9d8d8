#include "clirgate/miner/pair_stats.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>

namespace clirgate::miner {

namespace {

struct PairKey {
  const NormalizedQuery* query;
  const NormalizedQuery* translation;

  bool operator==(const PairKey& other) const noexcept {
    return *query == *other.query && *translation == *other.translation;
  }
};

std::size_t hash_key(const NormalizedQuery& query, const NormalizedQuery& translation) noexcept {
  const auto h1 = std::hash<NormalizedQuery>{}(query);
  const auto h2 = std::hash<NormalizedQuery>{}(translation);
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

struct PairKeyHash {
  std::size_t operator()(const PairKey& key) const noexcept { return hash_key(*key.query, *key.translation); }
};

struct Accumulator {
  // user -> clicked at least once on this pair
  std::unordered_map<std::string_view, bool> users;
  std::uint64_t occurrences = 0;
  std::uint64_t clicked_occurrences = 0;
};

bool by_key(const PairStats& a, const PairStats& b) {
  if (a.query != b.query) return a.query < b.query;
  return a.translation < b.translation;
}

template <typename Pred>
std::vector<PairStats> aggregate_where(std::span<const ClickRecord> records, CountingMode mode, Pred&& include) {
  std::unordered_map<PairKey, Accumulator, PairKeyHash> table;
  for (const auto& record : records) {
    if (!include(record)) continue;
    auto& acc = table[PairKey{&record.query, &record.translation}];
    const bool clicked = record.clicks >= 1;
    ++acc.occurrences;
    if (clicked) ++acc.clicked_occurrences;
    auto [it, inserted] = acc.users.try_emplace(record.user_id, clicked);
    if (!inserted && clicked) it->second = true;
  }

  std::vector<PairStats> out;
  out.reserve(table.size());
  for (const auto& [key, acc] : table) {
    PairStats stats{*key.query, *key.translation, 0, 0};
    if (mode == CountingMode::DistinctUsers) {
      stats.luv = acc.users.size();
      stats.duv = static_cast<std::uint64_t>(
          std::count_if(acc.users.begin(), acc.users.end(), [](const auto& u) { return u.second; }));
    } else {
      stats.luv = acc.occurrences;
      stats.duv = acc.clicked_occurrences;
    }
    out.push_back(std::move(stats));
  }
  std::sort(out.begin(), out.end(), by_key);
  return out;
}

}  // namespace

std::vector<PairStats> aggregate(std::span<const ClickRecord> records, CountingMode mode) {
  return aggregate_where(records, mode, [](const ClickRecord&) { return true; });
}

std::vector<PairStats> aggregate_sharded(std::span<const ClickRecord> records, unsigned workers, CountingMode mode) {
  if (workers <= 1) return aggregate(records, mode);

  std::vector<std::vector<PairStats>> shards(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        shards[w] = aggregate_where(records, mode, [&](const ClickRecord& r) {
          return hash_key(r.query, r.translation) % workers == w;
        });
      });
    }
  }
  // Shards own disjoint keys, so merging is a sorted concatenation.
  std::vector<PairStats> out;
  for (auto& shard : shards) {
    out.insert(out.end(), std::make_move_iterator(shard.begin()), std::make_move_iterator(shard.end()));
  }
  std::sort(out.begin(), out.end(), by_key);
  return out;
}

std::vector<PairStats> merge(std::span<const PairStats> a, std::span<const PairStats> b) {
  std::map<std::pair<NormalizedQuery, NormalizedQuery>, PairStats> merged;
  for (auto part : {a, b}) {
    for (const auto& stats : part) {
      auto [it, inserted] = merged.try_emplace({stats.query, stats.translation}, stats);
      if (!inserted) {
        it->second.luv += stats.luv;
        it->second.duv += stats.duv;
      }
    }
  }
  std::vector<PairStats> out;
  out.reserve(merged.size());
  for (auto& [key, stats] : merged) out.push_back(std::move(stats));
  return out;
}

}  // namespace clirgate::miner
