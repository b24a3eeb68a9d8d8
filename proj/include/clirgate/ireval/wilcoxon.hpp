#pragma once

#include <cstddef>
#include <span>

namespace clirgate::ireval {

enum class WilcoxonMethod {
  /// Exact below 20 non-zero pairs, normal approximation from 20 on.
  Auto,
  Exact,
  Normal,
};

struct WilcoxonResult {
  std::size_t n = 0;          // pairs left after dropping zero differences
  double w_plus = 0;          // rank sum of positive differences (a > b)
  double w_minus = 0;
  double statistic = 0;       // min(w_plus, w_minus)
  double p_value = 0;         // two-sided
  double p_one_sided = 0;     // in the direction of the observed effect
  bool significant = false;   // p_value < alpha
  bool exact = false;
};

/// Paired signed-rank test on a[i] - b[i]. Tied magnitudes share their
/// average rank. Throws TooFewPairs when fewer than 5 non-zero differences
/// remain and InvalidArgument on length mismatch.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b, double alpha = 0.05,
                                    WilcoxonMethod method = WilcoxonMethod::Auto);

}  // namespace clirgate::ireval
