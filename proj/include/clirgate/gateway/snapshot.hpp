#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "clirgate/gateway/gateway.hpp"

namespace clirgate::gateway {

using SnapshotEntries = std::vector<std::pair<std::string, std::string>>;

/// TSV `query \t translation`, one newline-terminated line per entry, least
/// recently used first so that replaying the lines restores recency order.
void write_snapshot(const TranslationCache& cache, std::ostream& out);

/// Throws CorruptSnapshot on a missing final newline, a line without exactly
/// one tab, an empty or non-canonical query, an empty translation, or
/// invalid UTF-8.
SnapshotEntries read_snapshot(std::istream& in);

/// Clears `cache` and inserts the entries in order, stamped with `now_ms`.
void restore_into(TranslationCache& cache, const SnapshotEntries& entries, double now_ms);

}  // namespace clirgate::gateway
