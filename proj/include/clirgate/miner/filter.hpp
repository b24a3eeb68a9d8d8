#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clirgate/miner/pair_stats.hpp"

namespace clirgate::miner {

enum class MiningMode {
  Top,     // keep ctr >= eta
  Bottom,  // keep ctr <= eta
};

MiningMode parse_mining_mode(std::string_view text);
std::string_view to_string(MiningMode mode) noexcept;

struct MiningThresholds {
  Ratio eta;
  std::uint64_t chi = 1;
  MiningMode mode = MiningMode::Top;

  /// Throws InvalidArgument unless eta <= 1 and chi >= 1.
  void validate() const;
  bool admits(const PairStats& stats) const;
};

struct MinedPair {
  NormalizedQuery query;
  NormalizedQuery translation;
  PairStats stats;

  friend bool operator==(const MinedPair&, const MinedPair&) = default;
};

/// Keeps pairs with luv >= chi and ctr on the requested side of eta. Both
/// comparisons are inclusive. Input order is preserved.
std::vector<MinedPair> filter(std::span<const PairStats> stats, const MiningThresholds& thresholds);

/// Sorts descending by luv, then by query, then by translation.
void sort_for_output(std::vector<MinedPair>& pairs);

/// `query \t translation \t luv \t duv \t ctr` lines in output order.
std::string to_mined_tsv(std::vector<MinedPair> pairs);

}  // namespace clirgate::miner
