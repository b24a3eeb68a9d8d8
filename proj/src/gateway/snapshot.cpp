#include "clirgate/gateway/snapshot.hpp"

#include <iterator>

#include "clirgate/error.hpp"

namespace clirgate::gateway {

void write_snapshot(const TranslationCache& cache, std::ostream& out) {
  for (const auto& [query, entry] : cache.entries()) {
    out << query << '\t' << entry.translation << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorKind::UnreadableSource, "failed writing snapshot");
}

SnapshotEntries read_snapshot(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorKind::UnreadableSource, "I/O error reading snapshot");

  SnapshotEntries entries;
  if (data.empty()) return entries;
  if (data.back() != '\n') {
    throw Error(ErrorKind::CorruptSnapshot, "snapshot does not end with a newline (truncated?)");
  }
  std::size_t start = 0;
  std::size_t lineno = 0;
  while (start < data.size()) {
    ++lineno;
    const auto end = data.find('\n', start);
    const std::string_view line(data.data() + start, end - start);
    start = end + 1;

    const auto where = "snapshot line " + std::to_string(lineno);
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorKind::CorruptSnapshot, where + ": expected `query \\t translation`");
    }
    const auto query = line.substr(0, tab);
    const auto translation = line.substr(tab + 1);
    if (translation.empty() || !clickstream::is_valid_utf8(translation)) {
      throw Error(ErrorKind::CorruptSnapshot, where + ": bad translation");
    }
    try {
      if (clickstream::normalize(query).view() != query) {
        throw Error(ErrorKind::CorruptSnapshot, where + ": query is not in canonical form");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CorruptSnapshot) throw;
      throw Error(ErrorKind::CorruptSnapshot, where + ": " + e.what());
    }
    entries.emplace_back(std::string(query), std::string(translation));
  }
  return entries;
}

void restore_into(TranslationCache& cache, const SnapshotEntries& entries, double now_ms) {
  cache.clear();
  for (const auto& [query, translation] : entries) {
    cache.put(query, CacheEntry{query, translation, now_ms});
  }
}

}  // namespace clirgate::gateway
