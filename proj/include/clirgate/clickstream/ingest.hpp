#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clirgate/clickstream/click_record.hpp"

namespace clirgate::clickstream {

enum class LogFormat { TsvV1, JsonlV1 };

/// Parses "tsv-v1" / "jsonl-v1"; anything else is a FormatError.
LogFormat parse_log_format(std::string_view tag);
std::string_view to_string(LogFormat format) noexcept;

/// Pull-style reader over a click log. Malformed lines are counted and
/// skipped; only an I/O failure on the underlying stream is fatal.
class LogReader {
 public:
  LogReader(std::istream& source, LogFormat format);

  std::optional<ClickRecord> next();

  /// Non-blank lines consumed so far.
  std::size_t lines() const noexcept { return lines_; }
  std::size_t emitted() const noexcept { return emitted_; }
  std::size_t skipped() const noexcept { return skipped_; }

 private:
  std::optional<ClickRecord> parse(std::string_view line) const;

  std::istream& source_;
  LogFormat format_;
  std::string buffer_;
  std::size_t lines_ = 0;
  std::size_t emitted_ = 0;
  std::size_t skipped_ = 0;
};

struct IngestResult {
  std::vector<ClickRecord> records;
  std::size_t lines = 0;
  std::size_t skipped = 0;
};

IngestResult ingest(std::istream& source, LogFormat format);
IngestResult ingest_file(const std::filesystem::path& path, LogFormat format);

/// Serializes a record as one line (without the trailing newline).
std::string to_log_line(const ClickRecord& record, LogFormat format);

}  // namespace clirgate::clickstream
