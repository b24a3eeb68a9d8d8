#include "clirgate/ireval/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "clirgate/error.hpp"

namespace clirgate::ireval {

namespace {

constexpr std::size_t kMinPairs = 5;
constexpr std::size_t kExactBelow = 20;
constexpr std::size_t kExactLimit = 62;

struct RankedDifferences {
  std::vector<double> ranks;   // average ranks of |d|
  std::vector<bool> positive;
  double tie_correction = 0;   // sum over tie groups of t^3 - t
};

RankedDifferences rank_differences(std::span<const double> a, std::span<const double> b) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0) diffs.push_back(d);
  }
  std::vector<std::size_t> order(diffs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return std::abs(diffs[x]) < std::abs(diffs[y]); });

  RankedDifferences out;
  out.ranks.resize(diffs.size());
  out.positive.resize(diffs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && std::abs(diffs[order[j]]) == std::abs(diffs[order[i]])) ++j;
    const double average = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t t = i; t < j; ++t) out.ranks[order[t]] = average;
    const double t = static_cast<double>(j - i);
    out.tie_correction += t * t * t - t;
    i = j;
  }
  for (std::size_t i = 0; i < diffs.size(); ++i) out.positive[i] = diffs[i] > 0;
  return out;
}

/// Exact null distribution of W+ by counting sign assignments. Ranks are
/// multiples of 1/2, so counting runs over doubled rank sums.
std::pair<double, double> exact_p(const std::vector<double>& ranks, double w_plus) {
  const std::size_t n = ranks.size();
  std::vector<std::uint64_t> doubled(n);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    doubled[i] = static_cast<std::uint64_t>(std::llround(2 * ranks[i]));
    total += doubled[i];
  }
  std::vector<std::uint64_t> ways(total + 1, 0);
  ways[0] = 1;
  for (auto r : doubled) {
    for (std::uint64_t s = total; s >= r; --s) {
      ways[s] += ways[s - r];
    }
  }
  const auto observed = static_cast<std::int64_t>(std::llround(2 * w_plus));
  const auto centre2 = static_cast<std::int64_t>(total);  // 2 * doubled mean
  const auto deviation = std::llabs(2 * observed - centre2);
  const double assignments = std::ldexp(1.0, static_cast<int>(n));

  double two_sided = 0;
  double upper = 0;
  double lower = 0;
  for (std::uint64_t s = 0; s <= total; ++s) {
    const auto si = static_cast<std::int64_t>(s);
    const double w = static_cast<double>(ways[s]);
    if (std::llabs(2 * si - centre2) >= deviation) two_sided += w;
    if (si >= observed) upper += w;
    if (si <= observed) lower += w;
  }
  const double one_sided = 2 * observed >= centre2 ? upper : lower;
  return {std::min(1.0, two_sided / assignments), std::min(1.0, one_sided / assignments)};
}

std::pair<double, double> normal_p(std::size_t n_pairs, double tie_correction, double w_plus) {
  const double n = static_cast<double>(n_pairs);
  const double mean = n * (n + 1) / 4.0;
  const double variance = n * (n + 1) * (2 * n + 1) / 24.0 - tie_correction / 48.0;
  const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(variance);
  const double two_sided = std::erfc(z / std::sqrt(2.0));
  return {std::min(1.0, two_sided), 0.5 * two_sided};
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha,
                                    WilcoxonMethod method) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "paired samples differ in length");
  }
  const auto ranked = rank_differences(a, b);
  WilcoxonResult result;
  result.n = ranked.ranks.size();
  if (result.n < kMinPairs) {
    throw Error(ErrorKind::TooFewPairs,
                std::to_string(result.n) + " non-zero differences; at least " + std::to_string(kMinPairs) + " needed");
  }
  for (std::size_t i = 0; i < result.n; ++i) {
    (ranked.positive[i] ? result.w_plus : result.w_minus) += ranked.ranks[i];
  }
  result.statistic = std::min(result.w_plus, result.w_minus);

  result.exact = method == WilcoxonMethod::Exact || (method == WilcoxonMethod::Auto && result.n < kExactBelow);
  if (result.exact && result.n > kExactLimit) {
    throw Error(ErrorKind::InvalidArgument, "exact enumeration supports at most 62 pairs");
  }
  const auto [two_sided, one_sided] =
      result.exact ? exact_p(ranked.ranks, result.w_plus) : normal_p(result.n, ranked.tie_correction, result.w_plus);
  result.p_value = two_sided;
  result.p_one_sided = one_sided;
  result.significant = result.p_value < alpha;
  return result;
}

}  // namespace clirgate::ireval
