#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "clirgate/ireval/judgments.hpp"

namespace clirgate::ireval {

using RelevantSet = std::unordered_set<std::string>;

// Single-query primitives. Documents past the end of a short ranking count
// as non-relevant.

double precision_at(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t k);
/// Relevant documents ranked below `depth` contribute nothing. Zero when
/// `relevant` is empty.
double average_precision(std::span<const std::string> ranking, const RelevantSet& relevant,
                         std::size_t depth = 1000);
/// Binary-gain NDCG; zero when `relevant` is empty.
double ndcg_at(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t k);

struct PrPoint {
  double recall = 0;
  double precision = 0;
};

/// Interpolated precision: at each level, the best precision achieved at any
/// rank whose recall reaches the level (0 if none does).
std::vector<PrPoint> interpolated_pr(std::span<const std::string> ranking, const RelevantSet& relevant,
                                     std::span<const double> levels, std::size_t depth = 1000);

/// The standard 0.0, 0.1, ..., 1.0 recall levels.
std::vector<double> eleven_point_levels();

// Run-level scoring. Only queries with at least one relevant judged document
// are scored; judged queries with none are excluded and counted.

struct EvalOptions {
  std::size_t k = 10;
  std::size_t map_depth = 1000;
  /// Skip judged queries absent from the run instead of scoring them 0.
  bool skip_missing_queries = false;
};

struct MetricScores {
  std::map<std::string, double> per_query;
  double mean = 0;
  std::size_t excluded_no_relevant = 0;
  std::size_t skipped_missing = 0;
};

/// Each throws NoJudgedQueries when nothing is left to score.
MetricScores precision_at_k(const RankedRun& run, const Qrels& qrels, std::size_t k, const EvalOptions& options = {});
MetricScores mean_average_precision(const RankedRun& run, const Qrels& qrels, const EvalOptions& options = {});
MetricScores ndcg_at_k(const RankedRun& run, const Qrels& qrels, std::size_t k, const EvalOptions& options = {});
/// Per-query interpolated curves averaged over the scored queries.
std::vector<PrPoint> pr_curve(const RankedRun& run, const Qrels& qrels, std::span<const double> levels,
                              const EvalOptions& options = {});

}  // namespace clirgate::ireval
