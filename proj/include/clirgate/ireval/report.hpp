#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clirgate/ireval/metrics.hpp"

namespace clirgate::ireval {

struct QueryScores {
  double precision_at_k = 0;
  double average_precision = 0;
  double ndcg_at_k = 0;
};

struct EvalReport {
  std::size_t k = 10;
  std::map<std::string, QueryScores> per_query;
  double mean_precision_at_k = 0;
  double map = 0;
  double mean_ndcg_at_k = 0;
  std::size_t excluded_no_relevant = 0;
  std::size_t skipped_missing = 0;
  std::optional<std::vector<PrPoint>> pr_curve;

  nlohmann::json to_json() const;
};

EvalReport evaluate(const RankedRun& run, const Qrels& qrels, const EvalOptions& options = {},
                    bool with_pr_curve = false);

/// `system,P@k,MAP,NDCG@k` with one row per named system.
std::string to_table_csv(std::span<const std::pair<std::string, EvalReport>> systems);

}  // namespace clirgate::ireval
