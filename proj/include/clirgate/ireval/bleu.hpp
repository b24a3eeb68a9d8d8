#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clirgate::ireval {

/// Normalizes (case fold, NFC, whitespace) and splits on spaces.
std::vector<std::string> tokenize(std::string_view text);

struct NgramCounts {
  std::array<std::uint64_t, 4> matches{};  // clipped
  std::array<std::uint64_t, 4> totals{};
  std::uint64_t hypothesis_length = 0;
  std::uint64_t reference_length = 0;

  NgramCounts& operator+=(const NgramCounts& other);
};

NgramCounts count_ngrams(std::span<const std::string> hypothesis, std::span<const std::string> reference);

struct BleuScore {
  double score = 0;
  std::array<double, 4> precisions{};
  double brevity_penalty = 0;
  std::uint64_t hypothesis_length = 0;
  std::uint64_t reference_length = 0;
};

/// Unsmoothed corpus BLEU-4 with one reference per hypothesis. Throws
/// EmptyCorpus for empty input and InvalidArgument for mismatched lengths.
BleuScore corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references);

/// Sentence BLEU-4 with add-one smoothing on the 2..4-gram precisions.
double sentence_bleu_smoothed(std::string_view hypothesis, std::string_view reference);

}  // namespace clirgate::ireval
