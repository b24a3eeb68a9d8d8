#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clirgate/miner/pair_stats.hpp"

namespace clirgate::miner {

enum class ReportAxis { Luv, Ctr };

ReportAxis parse_report_axis(std::string_view text);

struct HistogramBucket {
  double low = 0;
  double high = 0;  // may be +infinity
  std::size_t count = 0;
  double ratio = 0;
};

/// Buckets pairs by luv or ctr. `edges` must be strictly increasing; n+1 edges
/// make n buckets [e_i, e_{i+1}), the last one closed when its upper edge is
/// finite so that ctr == 1 lands in [0.9, 1]. Throws EmptyInput for no stats
/// and InvalidArgument if a value falls outside every bucket.
std::vector<HistogramBucket> distribution_report(std::span<const PairStats> stats, ReportAxis axis,
                                                 std::span<const double> edges);

/// Parses a comma-separated edge list; "inf" is accepted.
std::vector<double> parse_edges(std::string_view text);

/// CSV with header `bucket_low,bucket_high,ratio`.
std::string to_histogram_csv(std::span<const HistogramBucket> buckets);

}  // namespace clirgate::miner
