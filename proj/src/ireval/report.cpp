#include "clirgate/ireval/report.hpp"

#include <cstdio>

namespace clirgate::ireval {

nlohmann::json EvalReport::to_json() const {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [query, s] : per_query) {
    per[query] = {{"precision_at_k", s.precision_at_k},
                  {"average_precision", s.average_precision},
                  {"ndcg_at_k", s.ndcg_at_k}};
  }
  nlohmann::json doc = {{"k", k},
                        {"mean_precision_at_k", mean_precision_at_k},
                        {"map", map},
                        {"mean_ndcg_at_k", mean_ndcg_at_k},
                        {"queries_scored", per_query.size()},
                        {"excluded_no_relevant", excluded_no_relevant},
                        {"skipped_missing", skipped_missing},
                        {"per_query", per}};
  if (pr_curve) {
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& p : *pr_curve) curve.push_back({{"recall", p.recall}, {"precision", p.precision}});
    doc["pr_curve"] = curve;
  }
  return doc;
}

EvalReport evaluate(const RankedRun& run, const Qrels& qrels, const EvalOptions& options, bool with_pr_curve) {
  const auto p = precision_at_k(run, qrels, options.k, options);
  const auto ap = mean_average_precision(run, qrels, options);
  const auto nd = ndcg_at_k(run, qrels, options.k, options);

  EvalReport report;
  report.k = options.k;
  report.mean_precision_at_k = p.mean;
  report.map = ap.mean;
  report.mean_ndcg_at_k = nd.mean;
  report.excluded_no_relevant = p.excluded_no_relevant;
  report.skipped_missing = p.skipped_missing;
  for (const auto& [query, value] : p.per_query) {
    report.per_query[query] = QueryScores{value, ap.per_query.at(query), nd.per_query.at(query)};
  }
  if (with_pr_curve) {
    const auto levels = eleven_point_levels();
    report.pr_curve = pr_curve(run, qrels, levels, options);
  }
  return report;
}

std::string to_table_csv(std::span<const std::pair<std::string, EvalReport>> systems) {
  const auto k = systems.empty() ? std::size_t{10} : systems.front().second.k;
  std::string out = "system,P@" + std::to_string(k) + ",MAP,NDCG@" + std::to_string(k) + "\n";
  char line[256];
  for (const auto& [name, report] : systems) {
    std::snprintf(line, sizeof(line), "%s,%.4f,%.4f,%.4f\n", name.c_str(), report.mean_precision_at_k, report.map,
                  report.mean_ndcg_at_k);
    out += line;
  }
  return out;
}

}  // namespace clirgate::ireval
