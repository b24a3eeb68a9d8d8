#include "clirgate/ireval/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "clirgate/clickstream/normalize.hpp"
#include "clirgate/error.hpp"

namespace clirgate::ireval {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string normalized;
  try {
    normalized = clickstream::normalize(text).text();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::EmptyAfterNormalization) return tokens;
    throw;
  }
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto space = normalized.find(' ', start);
    if (space == std::string::npos) space = normalized.size();
    tokens.emplace_back(normalized, start, space - start);
    start = space + 1;
  }
  return tokens;
}

NgramCounts& NgramCounts::operator+=(const NgramCounts& other) {
  for (std::size_t n = 0; n < 4; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hypothesis_length += other.hypothesis_length;
  reference_length += other.reference_length;
  return *this;
}

namespace {

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::uint64_t> ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::map<Ngram, std::uint64_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

NgramCounts count_ngrams(std::span<const std::string> hypothesis, std::span<const std::string> reference) {
  NgramCounts counts;
  counts.hypothesis_length = hypothesis.size();
  counts.reference_length = reference.size();
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto hyp = ngrams(hypothesis, n);
    const auto ref = ngrams(reference, n);
    for (const auto& [gram, count] : hyp) {
      counts.totals[n - 1] += count;
      if (auto it = ref.find(gram); it != ref.end()) counts.matches[n - 1] += std::min(count, it->second);
    }
  }
  return counts;
}

BleuScore corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  if (hypotheses.size() != references.size()) {
    throw Error(ErrorKind::InvalidArgument, "hypothesis and reference counts differ");
  }
  if (hypotheses.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "no segments to score");
  }
  NgramCounts total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total += count_ngrams(tokenize(hypotheses[i]), tokenize(references[i]));
  }

  BleuScore out;
  out.hypothesis_length = total.hypothesis_length;
  out.reference_length = total.reference_length;
  double log_sum = 0;
  bool zero = total.hypothesis_length == 0;
  for (std::size_t n = 0; n < 4; ++n) {
    out.precisions[n] = total.totals[n] == 0 ? 0.0
                                             : static_cast<double>(total.matches[n]) / static_cast<double>(total.totals[n]);
    if (out.precisions[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(out.precisions[n]);
    }
  }
  const double c = static_cast<double>(total.hypothesis_length);
  const double r = static_cast<double>(total.reference_length);
  out.brevity_penalty = c == 0 ? 0.0 : (c < r ? std::exp(1.0 - r / c) : 1.0);
  out.score = zero ? 0.0 : out.brevity_penalty * std::exp(log_sum / 4.0);
  return out;
}

double sentence_bleu_smoothed(std::string_view hypothesis, std::string_view reference) {
  const auto hyp = tokenize(hypothesis);
  const auto ref = tokenize(reference);
  if (hyp.empty()) return 0;
  const auto counts = count_ngrams(hyp, ref);
  double log_sum = 0;
  for (std::size_t n = 0; n < 4; ++n) {
    const double smoothing = n == 0 ? 0.0 : 1.0;
    const double matches = static_cast<double>(counts.matches[n]) + smoothing;
    const double totals = static_cast<double>(counts.totals[n]) + smoothing;
    if (matches == 0) return 0;
    log_sum += std::log(matches / totals);
  }
  const double c = static_cast<double>(hyp.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum / 4.0);
}

}  // namespace clirgate::ireval
