#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clirgate/miner/filter.hpp"

namespace clirgate::corpus {

/// JT mixes mined pairs into the base corpus for one training run from
/// scratch; FT trains on the base to convergence, then continues on the mined
/// pairs alone.
enum class Strategy { JointTraining, FineTuning };

Strategy parse_strategy(std::string_view text);
std::string_view to_string(Strategy strategy) noexcept;

struct Stage {
  std::filesystem::path path;
  std::string policy;
  std::size_t count = 0;

  friend bool operator==(const Stage&, const Stage&) = default;
};

struct CorpusManifest {
  Strategy strategy = Strategy::JointTraining;
  /// How many times each mined pair is written into a JT stage; 1 means no oversampling.
  std::size_t mined_repeat = 1;
  std::vector<Stage> stages;

  std::string to_json() const;
  static CorpusManifest from_json(std::string_view text);
};

inline constexpr std::string_view kFromScratchPolicy = "from_scratch";
inline constexpr std::string_view kUntilConvergencePolicy = "until_convergence";

struct ManifestOptions {
  /// Directory receiving mined.tsv (and joint.tsv for JT).
  std::filesystem::path out_dir;
  std::size_t mined_repeat = 1;
};

/// Writes the stage files under options.out_dir and returns the manifest that
/// describes them. Throws EmptyMinedSet, BaseCorpusUnreadable, or FormatError
/// when a base line is not `source \t target`.
CorpusManifest build_manifest(const std::filesystem::path& base, std::span<const miner::MinedPair> mined,
                              Strategy strategy, const ManifestOptions& options);

/// Reads a mined-corpus TSV (the miner's output format) back into pairs.
std::vector<miner::MinedPair> read_mined_tsv(const std::filesystem::path& path);

}  // namespace clirgate::corpus
