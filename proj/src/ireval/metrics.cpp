#include "clirgate/ireval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "clirgate/error.hpp"

namespace clirgate::ireval {

double precision_at(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  const auto depth = std::min(k, ranking.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < depth; ++i) hits += relevant.contains(ranking[i]);
  return static_cast<double>(hits) / static_cast<double>(k);
}

double average_precision(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t depth) {
  if (relevant.empty()) return 0;
  const auto limit = std::min(depth, ranking.size());
  std::size_t hits = 0;
  double sum = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    if (relevant.contains(ranking[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double ndcg_at(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (relevant.empty()) return 0;
  double dcg = 0;
  const auto depth = std::min(k, ranking.size());
  for (std::size_t i = 0; i < depth; ++i) {
    if (relevant.contains(ranking[i])) dcg += 1.0 / std::log2(static_cast<double>(i + 2));
  }
  double ideal = 0;
  const auto ideal_depth = std::min(k, relevant.size());
  for (std::size_t i = 0; i < ideal_depth; ++i) ideal += 1.0 / std::log2(static_cast<double>(i + 2));
  return dcg / ideal;
}

std::vector<double> eleven_point_levels() {
  std::vector<double> levels;
  for (int i = 0; i <= 10; ++i) levels.push_back(i / 10.0);
  return levels;
}

namespace {

void check_levels(std::span<const double> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0 && levels[i] <= 1) || (i > 0 && !(levels[i] > levels[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "recall levels must be increasing within [0, 1]");
    }
  }
}

}  // namespace

std::vector<PrPoint> interpolated_pr(std::span<const std::string> ranking, const RelevantSet& relevant,
                                     std::span<const double> levels, std::size_t depth) {
  check_levels(levels);
  std::vector<PrPoint> out;
  out.reserve(levels.size());
  for (double level : levels) out.push_back(PrPoint{level, 0.0});
  if (relevant.empty()) return out;

  const double total = static_cast<double>(relevant.size());
  const auto limit = std::min(depth, ranking.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    hits += relevant.contains(ranking[i]);
    const double recall = static_cast<double>(hits) / total;
    const double precision = static_cast<double>(hits) / static_cast<double>(i + 1);
    for (auto& point : out) {
      if (recall >= point.recall) point.precision = std::max(point.precision, precision);
    }
  }
  return out;
}

namespace {

/// Calls `score` once per scored query with its ranking and relevant set.
MetricScores score_queries(const RankedRun& run, const Qrels& qrels, const EvalOptions& options,
                           const std::function<double(std::span<const std::string>, const RelevantSet&)>& score) {
  MetricScores out;
  double sum = 0;
  static const std::vector<std::string> kEmpty;
  for (const auto& [query, relevant] : qrels.relevant) {
    if (relevant.empty()) {
      ++out.excluded_no_relevant;
      continue;
    }
    auto it = run.rankings.find(query);
    if (it == run.rankings.end() && options.skip_missing_queries) {
      ++out.skipped_missing;
      continue;
    }
    const auto& ranking = it == run.rankings.end() ? kEmpty : it->second;
    const double value = score(ranking, relevant);
    out.per_query.emplace(query, value);
    sum += value;
  }
  if (out.per_query.empty()) {
    throw Error(ErrorKind::NoJudgedQueries, "no query with a relevant judgment to score");
  }
  out.mean = sum / static_cast<double>(out.per_query.size());
  return out;
}

}  // namespace

MetricScores precision_at_k(const RankedRun& run, const Qrels& qrels, std::size_t k, const EvalOptions& options) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  return score_queries(run, qrels, options,
                       [k](std::span<const std::string> r, const RelevantSet& rel) { return precision_at(r, rel, k); });
}

MetricScores mean_average_precision(const RankedRun& run, const Qrels& qrels, const EvalOptions& options) {
  const auto depth = options.map_depth;
  return score_queries(run, qrels, options, [depth](std::span<const std::string> r, const RelevantSet& rel) {
    return average_precision(r, rel, depth);
  });
}

MetricScores ndcg_at_k(const RankedRun& run, const Qrels& qrels, std::size_t k, const EvalOptions& options) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  return score_queries(run, qrels, options,
                       [k](std::span<const std::string> r, const RelevantSet& rel) { return ndcg_at(r, rel, k); });
}

std::vector<PrPoint> pr_curve(const RankedRun& run, const Qrels& qrels, std::span<const double> levels,
                              const EvalOptions& options) {
  check_levels(levels);
  std::vector<double> sums(levels.size(), 0.0);
  const auto depth = options.map_depth;
  const auto scored = score_queries(run, qrels, options, [&](std::span<const std::string> r, const RelevantSet& rel) {
    const auto curve = interpolated_pr(r, rel, levels, depth);
    for (std::size_t i = 0; i < curve.size(); ++i) sums[i] += curve[i].precision;
    return 0.0;
  });
  std::vector<PrPoint> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out.push_back(PrPoint{levels[i], sums[i] / static_cast<double>(scored.per_query.size())});
  }
  return out;
}

}  // namespace clirgate::ireval
