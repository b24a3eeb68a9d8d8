#include "clirgate/translators/translator.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "clirgate/error.hpp"
#include "clirgate/translators/splitmix.hpp"

namespace clirgate::translators {

std::string_view to_string(Provenance source) noexcept {
  switch (source) {
    case Provenance::Fast: return "fast";
    case Provenance::Slow: return "slow";
    case Provenance::Cache: return "cache";
  }
  return "unknown";
}

void validate(const LatencyModel& model) {
  if (const auto* fixed = std::get_if<FixedLatency>(&model)) {
    if (!(fixed->ms >= 0) || !std::isfinite(fixed->ms)) {
      throw Error(ErrorKind::InvalidArgument, "fixed latency must be finite and >= 0");
    }
    return;
  }
  const auto& ln = std::get<LogNormalLatency>(model);
  if (!(ln.median_ms > 0) || !std::isfinite(ln.median_ms) || !(ln.sigma >= 0) || !std::isfinite(ln.sigma)) {
    throw Error(ErrorKind::InvalidArgument, "lognormal latency needs median > 0 and sigma >= 0");
  }
}

SimulatedTranslator::SimulatedTranslator(TranslatorSpec spec, Provenance role) : spec_(std::move(spec)), role_(role) {
  validate(spec_.latency);
}

std::string SimulatedTranslator::lookup(const NormalizedQuery& query) const {
  if (auto it = spec_.table.find(query.text()); it != spec_.table.end()) {
    return it->second;
  }
  if (const auto* map = std::get_if<TokenMapFallback>(&spec_.fallback)) {
    std::string out;
    const auto& text = query.text();
    std::size_t start = 0;
    while (start < text.size()) {
      auto space = text.find(' ', start);
      if (space == std::string::npos) space = text.size();
      const std::string token = text.substr(start, space - start);
      if (!out.empty()) out += ' ';
      auto hit = map->dictionary.find(token);
      out += hit == map->dictionary.end() ? token : hit->second;
      start = space + 1;
    }
    return out;
  }
  return query.text();
}

double SimulatedTranslator::draw_latency(std::uint64_t call_index) const {
  if (const auto* fixed = std::get_if<FixedLatency>(&spec_.latency)) {
    return fixed->ms;
  }
  const auto& ln = std::get<LogNormalLatency>(spec_.latency);
  // Box-Muller over two counter-derived uniforms keeps draws reproducible
  // regardless of which thread makes the call.
  const std::uint64_t base = splitmix64(spec_.seed ^ splitmix64(call_index));
  const double u1 = to_unit_open(base);
  const double u2 = to_unit_open(splitmix64(base));
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return ln.median_ms * std::exp(ln.sigma * z);
}

TranslationResult SimulatedTranslator::translate(const NormalizedQuery& query, Clock& clock) const {
  const std::uint64_t index = calls_.fetch_add(1, std::memory_order_relaxed);

  std::uint64_t pending = failures_pending_.load();
  while (pending > 0) {
    if (failures_pending_.compare_exchange_weak(pending, pending - 1)) {
      throw Error(ErrorKind::BackendUnavailable, spec_.name + " is unavailable (injected)");
    }
  }
  const double p = failure_probability_.load();
  if (p > 0 && to_unit_open(splitmix64(~spec_.seed ^ splitmix64(index + 0x5bd1e995ULL))) < p) {
    throw Error(ErrorKind::BackendUnavailable, spec_.name + " is unavailable (injected)");
  }

  TranslationResult result{lookup(query), role_, draw_latency(index)};
  clock.wait_ms(result.latency_ms);
  return result;
}

std::unordered_map<std::string, std::string> load_translation_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::UnreadableSource, "cannot open translation table '" + path.string() + "'");
  }
  std::unordered_map<std::string, std::string> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos || tab + 1 == line.size()) {
      throw Error(ErrorKind::FormatError, path.string() + ":" + std::to_string(lineno) + ": expected `query \\t translation`");
    }
    table[clickstream::normalize(std::string_view(line).substr(0, tab)).text()] = line.substr(tab + 1);
  }
  return table;
}

}  // namespace clirgate::translators
