#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "clirgate/clickstream/click_record.hpp"
#include "clirgate/ratio.hpp"

namespace clirgate::miner {

using clickstream::ClickRecord;
using clickstream::NormalizedQuery;

/// Aggregate click behaviour for one (query, translation) pair.
///   luv: users who were shown the result list for the pair
///   duv: those of them who went on to click at least one item
struct PairStats {
  NormalizedQuery query;
  NormalizedQuery translation;
  std::uint64_t luv = 0;
  std::uint64_t duv = 0;

  /// Conversion rate duv / luv, exact.
  Ratio ctr() const { return Ratio(duv, luv); }
  double ctr_value() const noexcept { return static_cast<double>(duv) / static_cast<double>(luv); }

  friend bool operator==(const PairStats&, const PairStats&) = default;
};

enum class CountingMode {
  /// luv/duv count distinct users per pair (default).
  DistinctUsers,
  /// Every record counts once toward luv, and once toward duv if it clicked.
  PerOccurrence,
};

/// One PairStats per distinct (query, translation), sorted by (query, translation).
std::vector<PairStats> aggregate(std::span<const ClickRecord> records,
                                 CountingMode mode = CountingMode::DistinctUsers);

/// Same result as `aggregate`, computed on `workers` threads that each own the
/// keys hashing to their shard.
std::vector<PairStats> aggregate_sharded(std::span<const ClickRecord> records, unsigned workers,
                                         CountingMode mode = CountingMode::DistinctUsers);

/// Sums luv and duv per key. Exact only when no user contributes to both inputs.
std::vector<PairStats> merge(std::span<const PairStats> a, std::span<const PairStats> b);

}  // namespace clirgate::miner
