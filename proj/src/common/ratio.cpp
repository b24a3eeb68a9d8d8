#include "clirgate/ratio.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "clirgate/error.hpp"

namespace clirgate {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyAfterNormalization: return "EmptyAfterNormalization";
    case ErrorKind::InvalidEncoding: return "InvalidEncoding";
    case ErrorKind::UnreadableSource: return "UnreadableSource";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyMinedSet: return "EmptyMinedSet";
    case ErrorKind::BaseCorpusUnreadable: return "BaseCorpusUnreadable";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorKind::InfeasibleTarget: return "InfeasibleTarget";
    case ErrorKind::NoJudgedQueries: return "NoJudgedQueries";
    case ErrorKind::TooFewPairs: return "TooFewPairs";
  }
  return "Unknown";
}

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) {
    throw Error(ErrorKind::InvalidArgument, "ratio with zero denominator");
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorKind::InvalidArgument, "not a rational: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  if (text.empty()) {
    throw Error(ErrorKind::InvalidArgument, "empty rational");
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return Ratio(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
  }
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return Ratio(parse_digits(text, text), 1);
  }
  const auto int_part = text.substr(0, dot);
  const auto frac_part = text.substr(dot + 1);
  if (frac_part.size() > 18 || (int_part.empty() && frac_part.empty())) {
    throw Error(ErrorKind::InvalidArgument, "not a rational: '" + std::string(text) + "'");
  }
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  const std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  const std::uint64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
  return Ratio(whole * scale + frac, scale);
}

Ratio Ratio::from_double(double value) {
  if (!std::isfinite(value) || value < 0) {
    throw Error(ErrorKind::InvalidArgument, "ratio must be finite and non-negative");
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
  if (ec != std::errc()) {
    throw Error(ErrorKind::InvalidArgument, "cannot format ratio");
  }
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string Ratio::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
  const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
  const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

}  // namespace clirgate
