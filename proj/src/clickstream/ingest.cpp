#include "clirgate/clickstream/ingest.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "clirgate/error.hpp"

namespace clirgate::clickstream {

ClickRecord make_record(std::string_view user_id, std::string_view query,
                        std::string_view translation, std::uint64_t clicks) {
  if (user_id.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty user_id");
  }
  if (!is_valid_utf8(user_id) || user_id.find_first_of("\t\n") != std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "user_id contains forbidden characters");
  }
  return ClickRecord{std::string(user_id), normalize(query), normalize(translation), clicks};
}

LogFormat parse_log_format(std::string_view tag) {
  if (tag == "tsv-v1") return LogFormat::TsvV1;
  if (tag == "jsonl-v1") return LogFormat::JsonlV1;
  throw Error(ErrorKind::FormatError, "unknown log format '" + std::string(tag) + "'");
}

std::string_view to_string(LogFormat format) noexcept {
  return format == LogFormat::TsvV1 ? "tsv-v1" : "jsonl-v1";
}

namespace {

std::optional<std::uint64_t> parse_clicks(std::string_view field) {
  std::uint64_t value = 0;
  if (field.empty() || field.front() == '+' || field.front() == '-') return std::nullopt;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

LogReader::LogReader(std::istream& source, LogFormat format) : source_(source), format_(format) {}

std::optional<ClickRecord> LogReader::parse(std::string_view line) const {
  try {
    if (format_ == LogFormat::TsvV1) {
      std::string_view fields[4];
      std::size_t n = 0;
      std::size_t start = 0;
      while (true) {
        const auto tab = line.find('\t', start);
        if (n == 4) return std::nullopt;
        fields[n++] = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
        if (tab == std::string_view::npos) break;
        start = tab + 1;
      }
      if (n != 4) return std::nullopt;
      auto clicks = parse_clicks(fields[3]);
      if (!clicks) return std::nullopt;
      return make_record(fields[0], fields[1], fields[2], *clicks);
    }

    auto object = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!object.is_object()) return std::nullopt;
    const auto u = object.find("u");
    const auto q = object.find("q");
    const auto t = object.find("t");
    const auto c = object.find("c");
    if (u == object.end() || q == object.end() || t == object.end() || c == object.end()) return std::nullopt;
    if (!u->is_string() || !q->is_string() || !t->is_string() || !c->is_number_integer()) return std::nullopt;
    if (c->is_number_unsigned()) {
      return make_record(u->get_ref<const std::string&>(), q->get_ref<const std::string&>(),
                         t->get_ref<const std::string&>(), c->get<std::uint64_t>());
    }
    const auto signed_clicks = c->get<std::int64_t>();
    if (signed_clicks < 0) return std::nullopt;
    return make_record(u->get_ref<const std::string&>(), q->get_ref<const std::string&>(),
                       t->get_ref<const std::string&>(), static_cast<std::uint64_t>(signed_clicks));
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<ClickRecord> LogReader::next() {
  while (std::getline(source_, buffer_)) {
    std::string_view line = buffer_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) continue;
    ++lines_;
    if (auto record = parse(line)) {
      ++emitted_;
      return record;
    }
    ++skipped_;
  }
  if (source_.bad()) {
    throw Error(ErrorKind::UnreadableSource, "I/O error while reading click log");
  }
  return std::nullopt;
}

IngestResult ingest(std::istream& source, LogFormat format) {
  LogReader reader(source, format);
  IngestResult result;
  while (auto record = reader.next()) {
    result.records.push_back(std::move(*record));
  }
  result.lines = reader.lines();
  result.skipped = reader.skipped();
  return result;
}

IngestResult ingest_file(const std::filesystem::path& path, LogFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::UnreadableSource, "cannot open '" + path.string() + "'");
  }
  return ingest(in, format);
}

std::string to_log_line(const ClickRecord& record, LogFormat format) {
  if (format == LogFormat::TsvV1) {
    return record.user_id + '\t' + record.query.text() + '\t' + record.translation.text() + '\t' +
           std::to_string(record.clicks);
  }
  nlohmann::json object = {
      {"u", record.user_id}, {"q", record.query.text()}, {"t", record.translation.text()}, {"c", record.clicks}};
  return object.dump();
}

}  // namespace clirgate::clickstream
