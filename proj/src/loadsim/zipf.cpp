#include "clirgate/loadsim/zipf.hpp"

#include <algorithm>
#include <cmath>

#include "clirgate/error.hpp"

namespace clirgate::loadsim {

ZipfSampler::ZipfSampler(std::size_t n, double exponent) : exponent_(exponent), cdf_(n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "zipf support must be non-empty");
  if (!(exponent > 0) || !std::isfinite(exponent)) {
    throw Error(ErrorKind::InvalidArgument, "zipf exponent must be positive");
  }
  double total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    total += std::pow(static_cast<double>(k + 1), -exponent);
    cdf_[k] = total;
  }
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::size_t ZipfSampler::operator()(double uniform) const noexcept {
  auto it = std::lower_bound(cdf_.begin(), cdf_.end(), uniform);
  if (it == cdf_.end()) --it;
  return static_cast<std::size_t>(it - cdf_.begin());
}

double ZipfSampler::probability(std::size_t rank) const noexcept {
  if (rank >= cdf_.size()) return 0;
  return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1];
}

}  // namespace clirgate::loadsim
