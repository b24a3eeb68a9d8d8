#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace clirgate::ireval {

/// Binary relevance judgments. A query can be judged yet have no relevant
/// documents (every judgment had relevance 0).
struct Qrels {
  std::map<std::string, std::unordered_set<std::string>> relevant;

  void judge(const std::string& query, const std::string& doc, bool is_relevant);
  std::size_t relevant_count(const std::string& query) const;
};

/// Ranked document ids per query, rank 1 first.
struct RankedRun {
  std::map<std::string, std::vector<std::string>> rankings;

  /// Throws InvalidArgument if `docs` repeats a document.
  void set(const std::string& query, std::vector<std::string> docs);
};

/// `query_id 0 doc_id relevance`; relevance > 0 counts as relevant.
Qrels read_qrels(std::istream& in);
Qrels read_qrels(const std::filesystem::path& path);

/// `query_id doc_id rank score`; lines are ordered by rank (ties broken by
/// descending score, then doc id). A repeated document is a FormatError.
RankedRun read_run(std::istream& in);
RankedRun read_run(const std::filesystem::path& path);

}  // namespace clirgate::ireval
