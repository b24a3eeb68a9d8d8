#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace clirgate::loadsim {

struct ZipfPopularity {
  double exponent = 1.0;
};

struct UniformPopularity {
  /// Without replacement, every query is used once before any repeats.
  bool with_replacement = true;
};

/// Replays a file of raw queries, one per line, up to total_requests lines.
struct TracePopularity {
  std::filesystem::path path;
};

using Popularity = std::variant<ZipfPopularity, UniformPopularity, TracePopularity>;

struct WorkloadSpec {
  std::size_t total_requests = 100'000;
  std::size_t distinct_queries = 10'000;
  Popularity popularity = ZipfPopularity{};
  std::uint64_t seed = 0;
  /// Zipf only: solve for the exponent that achieves this repetition rate.
  std::optional<double> target_repetition_rate;

  void validate() const;
  static WorkloadSpec from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
};

struct Workload {
  std::vector<std::string> queries;
  double repetition_rate = 0;
  /// Exponent actually used (the solved one when a target was given).
  std::optional<double> zipf_exponent;
};

/// 1 - distinct/total; 0 for an empty stream.
double repetition_rate(std::span<const std::string> queries);

/// Raw query text for pool index `rank`.
std::string pool_query(std::size_t rank);

/// Deterministic for a fixed spec. Throws InfeasibleTarget when no exponent
/// brings the achieved repetition within one percentage point of the target.
Workload generate(const WorkloadSpec& spec);

}  // namespace clirgate::loadsim
