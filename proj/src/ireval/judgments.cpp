#include "clirgate/ireval/judgments.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "clirgate/error.hpp"

namespace clirgate::ireval {

void Qrels::judge(const std::string& query, const std::string& doc, bool is_relevant) {
  auto& docs = relevant[query];
  if (is_relevant) docs.insert(doc);
}

std::size_t Qrels::relevant_count(const std::string& query) const {
  auto it = relevant.find(query);
  return it == relevant.end() ? 0 : it->second.size();
}

void RankedRun::set(const std::string& query, std::vector<std::string> docs) {
  std::unordered_set<std::string> seen;
  for (const auto& d : docs) {
    if (!seen.insert(d).second) {
      throw Error(ErrorKind::InvalidArgument, "document '" + d + "' ranked twice for query '" + query + "'");
    }
  }
  rankings[query] = std::move(docs);
}

namespace {

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::UnreadableSource, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

Qrels read_qrels(std::istream& in) {
  Qrels qrels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string query, iteration, doc, extra;
    long relevance = 0;
    if (!(fields >> query)) continue;  // blank line
    if (!(fields >> iteration >> doc >> relevance) || (fields >> extra)) {
      throw Error(ErrorKind::FormatError, "qrels line " + std::to_string(lineno) + ": expected `query 0 doc relevance`");
    }
    qrels.judge(query, doc, relevance > 0);
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableSource, "I/O error reading qrels");
  return qrels;
}

Qrels read_qrels(const std::filesystem::path& path) {
  auto in = open(path);
  return read_qrels(in);
}

RankedRun read_run(std::istream& in) {
  struct Row {
    std::string doc;
    long rank;
    double score;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string query, extra;
    Row row;
    if (!(fields >> query)) continue;
    if (!(fields >> row.doc >> row.rank >> row.score) || (fields >> extra)) {
      throw Error(ErrorKind::FormatError, "run line " + std::to_string(lineno) + ": expected `query doc rank score`");
    }
    rows[query].push_back(std::move(row));
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableSource, "I/O error reading run");

  RankedRun run;
  for (auto& [query, list] : rows) {
    std::sort(list.begin(), list.end(), [](const Row& a, const Row& b) {
      if (a.rank != b.rank) return a.rank < b.rank;
      if (a.score != b.score) return a.score > b.score;
      return a.doc < b.doc;
    });
    std::vector<std::string> docs;
    docs.reserve(list.size());
    for (auto& r : list) docs.push_back(std::move(r.doc));
    try {
      run.set(query, std::move(docs));
    } catch (const Error& e) {
      throw Error(ErrorKind::FormatError, e.what());
    }
  }
  return run;
}

RankedRun read_run(const std::filesystem::path& path) {
  auto in = open(path);
  return read_run(in);
}

}  // namespace clirgate::ireval
