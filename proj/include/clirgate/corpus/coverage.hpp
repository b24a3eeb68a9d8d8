#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "clirgate/ratio.hpp"

namespace clirgate::corpus {

/// Fraction of distinct source-side word types of `test` that also occur on
/// the source side of `train`. Words come from whitespace-splitting the
/// normalized source text. Throws EmptyCorpus if either side has no words.
Ratio word_coverage(std::span<const std::string> train_sources, std::span<const std::string> test_sources);

/// File form: both arguments are parallel TSV (`source \t target`) corpora.
Ratio word_coverage(const std::filesystem::path& train, const std::filesystem::path& test);

}  // namespace clirgate::corpus
