#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace clirgate {

/// Exact non-negative rational. Threshold tests such as `duv / luv >= 0.7`
/// are decided on integers so boundary pairs are never lost to rounding.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::uint64_t num, std::uint64_t den);

  /// Accepts "0.7", "3/10", "1", "1e-2" is rejected.
  static Ratio parse(std::string_view text);
  /// Converts through the shortest round-trip decimal form, so 0.7 maps to 7/10.
  static Ratio from_double(double value);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept;
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept { return (a <=> b) == 0; }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace clirgate
