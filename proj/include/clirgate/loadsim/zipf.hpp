#pragma once

#include <cstddef>
#include <vector>

namespace clirgate::loadsim {

/// Inverse-CDF sampler over ranks 0..n-1 with P(rank k) proportional to 1/(k+1)^s.
/// Sampling a given uniform is deterministic, so callers can reuse one stream
/// of uniforms across exponents.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent);

  std::size_t operator()(double uniform) const noexcept;
  std::size_t size() const noexcept { return cdf_.size(); }
  double exponent() const noexcept { return exponent_; }
  double probability(std::size_t rank) const noexcept;

 private:
  double exponent_;
  std::vector<double> cdf_;
};

}  // namespace clirgate::loadsim
