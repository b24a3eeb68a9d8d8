#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>

#include "clirgate/clickstream/normalize.hpp"
#include "clirgate/translators/clock.hpp"

namespace clirgate::translators {

using clickstream::NormalizedQuery;

enum class Provenance { Fast, Slow, Cache };

std::string_view to_string(Provenance source) noexcept;

struct TranslationResult {
  std::string text;
  Provenance source = Provenance::Fast;
  double latency_ms = 0;

  friend bool operator==(const TranslationResult&, const TranslationResult&) = default;
};

/// Backend contract. Implementations must be safe for concurrent calls and
/// return the same text for the same query every time.
class Translator {
 public:
  virtual ~Translator() = default;

  virtual std::string_view name() const noexcept = 0;
  /// Spends the call's latency on `clock`. Throws Error{BackendUnavailable}.
  virtual TranslationResult translate(const NormalizedQuery& query, Clock& clock) const = 0;
};

struct FixedLatency {
  double ms = 0;
};

struct LogNormalLatency {
  double median_ms = 0;
  double sigma = 0;
};

using LatencyModel = std::variant<FixedLatency, LogNormalLatency>;

void validate(const LatencyModel& model);

struct EchoFallback {};

/// Maps each whitespace token through a bilingual dictionary; unknown tokens pass through.
struct TokenMapFallback {
  std::unordered_map<std::string, std::string> dictionary;
};

using Fallback = std::variant<EchoFallback, TokenMapFallback>;

struct TranslatorSpec {
  std::string name;
  LatencyModel latency = FixedLatency{10.0};
  /// Keys are normalized query texts.
  std::unordered_map<std::string, std::string> table;
  Fallback fallback = EchoFallback{};
  std::uint64_t seed = 0;
};

/// Table-driven stand-in for a real MT engine. Divergent tables give the fast
/// and slow backends observably different output quality.
class SimulatedTranslator final : public Translator {
 public:
  SimulatedTranslator(TranslatorSpec spec, Provenance role);

  std::string_view name() const noexcept override { return spec_.name; }
  TranslationResult translate(const NormalizedQuery& query, Clock& clock) const override;

  /// Deterministic text lookup without spending latency.
  std::string lookup(const NormalizedQuery& query) const;
  /// The i-th latency draw of this translator's stream.
  double draw_latency(std::uint64_t call_index) const;

  /// Fault injection: the next `n` calls throw BackendUnavailable.
  void fail_next(std::uint64_t n) noexcept { failures_pending_.store(n); }
  /// Fault injection: each call independently fails with probability `p`,
  /// decided by a hash of (seed, call index).
  void set_failure_probability(double p) noexcept { failure_probability_.store(p); }

  std::uint64_t calls() const noexcept { return calls_.load(); }
  const TranslatorSpec& spec() const noexcept { return spec_; }

 private:
  TranslatorSpec spec_;
  Provenance role_;
  mutable std::atomic<std::uint64_t> calls_{0};
  mutable std::atomic<std::uint64_t> failures_pending_{0};
  std::atomic<double> failure_probability_{0.0};
};

/// Reads `query \t translation` lines; queries are normalized on load.
std::unordered_map<std::string, std::string> load_translation_table(const std::filesystem::path& path);

/// Spec file: JSON `{name, latency, table_path, fallback, seed}` where latency
/// is `{"kind":"fixed","ms":10}` or `{"kind":"lognormal","median_ms":150,"sigma":0.3}`
/// and fallback is `"echo"` or `{"kind":"token_map","dictionary_path":...}`.
/// Relative paths resolve against the spec file's directory.
TranslatorSpec load_translator_spec(const std::filesystem::path& path);
TranslatorSpec parse_translator_spec(std::string_view json, const std::filesystem::path& base_dir);

}  // namespace clirgate::translators
