#include "clirgate/miner/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "clirgate/error.hpp"

namespace clirgate::miner {

ReportAxis parse_report_axis(std::string_view text) {
  if (text == "luv") return ReportAxis::Luv;
  if (text == "ctr") return ReportAxis::Ctr;
  throw Error(ErrorKind::InvalidArgument, "report axis must be 'luv' or 'ctr'");
}

std::vector<HistogramBucket> distribution_report(std::span<const PairStats> stats, ReportAxis axis,
                                                 std::span<const double> edges) {
  if (stats.empty()) {
    throw Error(ErrorKind::EmptyInput, "no pair statistics to report on");
  }
  if (edges.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "at least two bucket edges are required");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (std::isnan(edges[i]) || (i > 0 && !(edges[i] > edges[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "bucket edges must be strictly increasing");
    }
  }

  std::vector<HistogramBucket> buckets(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    buckets[i].low = edges[i];
    buckets[i].high = edges[i + 1];
  }

  const double top = edges.back();
  for (const auto& s : stats) {
    const double value = axis == ReportAxis::Luv ? static_cast<double>(s.luv) : s.ctr_value();
    std::size_t slot = buckets.size();
    for (std::size_t i = 0; i < buckets.size(); ++i) {
      if (value >= buckets[i].low && value < buckets[i].high) {
        slot = i;
        break;
      }
    }
    if (slot == buckets.size() && std::isfinite(top) && value == top) slot = buckets.size() - 1;
    if (slot == buckets.size()) {
      throw Error(ErrorKind::InvalidArgument, "value " + std::to_string(value) + " is outside every bucket");
    }
    ++buckets[slot].count;
  }
  for (auto& b : buckets) {
    b.ratio = static_cast<double>(b.count) / static_cast<double>(stats.size());
  }
  return buckets;
}

std::vector<double> parse_edges(std::string_view text) {
  std::vector<double> edges;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    std::string item(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item == "inf" || item == "+inf" || item == "∞") {
      edges.push_back(std::numeric_limits<double>::infinity());
    } else {
      try {
        std::size_t used = 0;
        edges.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidArgument, "bad bucket edge '" + item + "'");
      }
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (edges.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two bucket edges");
  return edges;
}

std::string to_histogram_csv(std::span<const HistogramBucket> buckets) {
  std::string out = "bucket_low,bucket_high,ratio\n";
  char line[128];
  for (const auto& b : buckets) {
    std::snprintf(line, sizeof(line), "%g,%g,%.9f\n", b.low, b.high, b.ratio);
    out += line;
  }
  return out;
}

}  // namespace clirgate::miner
