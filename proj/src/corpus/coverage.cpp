#include "clirgate/corpus/coverage.hpp"

#include <fstream>
#include <unordered_set>
#include <vector>

#include "clirgate/clickstream/normalize.hpp"
#include "clirgate/error.hpp"

namespace clirgate::corpus {

namespace {

void add_word_types(std::string_view source, std::unordered_set<std::string>& types) {
  std::string text;
  try {
    text = clickstream::normalize(source).text();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptyAfterNormalization) return;
    throw;
  }
  std::size_t start = 0;
  while (start < text.size()) {
    auto space = text.find(' ', start);
    if (space == std::string::npos) space = text.size();
    types.emplace(text, start, space - start);
    start = space + 1;
  }
}

std::vector<std::string> read_sources(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::UnreadableSource, "cannot open corpus '" + path.string() + "'");
  }
  std::vector<std::string> sources;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    sources.push_back(line.substr(0, line.find('\t')));
  }
  return sources;
}

}  // namespace

Ratio word_coverage(std::span<const std::string> train_sources, std::span<const std::string> test_sources) {
  std::unordered_set<std::string> train_types;
  std::unordered_set<std::string> test_types;
  for (const auto& s : train_sources) add_word_types(s, train_types);
  for (const auto& s : test_sources) add_word_types(s, test_types);
  if (train_types.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "training corpus has no words");
  }
  if (test_types.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "test corpus has no words");
  }
  std::uint64_t covered = 0;
  for (const auto& word : test_types) {
    if (train_types.contains(word)) ++covered;
  }
  return Ratio(covered, test_types.size());
}

Ratio word_coverage(const std::filesystem::path& train, const std::filesystem::path& test) {
  const auto train_sources = read_sources(train);
  const auto test_sources = read_sources(test);
  return word_coverage(train_sources, test_sources);
}

}  // namespace clirgate::corpus
