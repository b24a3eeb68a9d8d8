#pragma once

#include <cstdint>
#include <vector>

#include "clirgate/clickstream/click_record.hpp"

namespace clirgate::loadsim {

/// Parameters for a synthetic click log. Pair popularity follows Zipf over
/// `pairs` candidates; each pair gets a latent click probability drawn
/// uniformly from [0, 1], and a clicking record reports 1..max_clicks clicks.
struct ClickLogSpec {
  std::size_t records = 10'000;
  std::size_t users = 1'000;
  std::size_t pairs = 5'000;
  /// Candidate translations per source query.
  std::size_t translations_per_query = 2;
  double zipf_exponent = 1.1;
  std::uint64_t max_clicks = 3;
  std::uint64_t seed = 0;
};

std::vector<clickstream::ClickRecord> synthesize_click_log(const ClickLogSpec& spec);

}  // namespace clirgate::loadsim
