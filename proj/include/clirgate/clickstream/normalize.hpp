#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace clirgate::clickstream {

/// A query or translation in canonical form: NFC-composed, case-folded,
/// trimmed, with every run of Unicode whitespace collapsed to one ASCII space.
/// Only `normalize` produces one, so holding a NormalizedQuery is proof the
/// text is canonical and non-empty.
class NormalizedQuery {
 public:
  const std::string& text() const noexcept { return text_; }
  std::string_view view() const noexcept { return text_; }

  friend auto operator<=>(const NormalizedQuery&, const NormalizedQuery&) = default;
  friend bool operator==(const NormalizedQuery&, const NormalizedQuery&) = default;

 private:
  friend NormalizedQuery normalize(std::string_view raw);
  explicit NormalizedQuery(std::string text) : text_(std::move(text)) {}

  std::string text_;
};

/// Throws Error{InvalidEncoding} on malformed UTF-8 and
/// Error{EmptyAfterNormalization} when nothing but whitespace remains.
NormalizedQuery normalize(std::string_view raw);

/// True iff `text` is valid UTF-8.
bool is_valid_utf8(std::string_view text) noexcept;

}  // namespace clirgate::clickstream

template <>
struct std::hash<clirgate::clickstream::NormalizedQuery> {
  std::size_t operator()(const clirgate::clickstream::NormalizedQuery& q) const noexcept {
    return std::hash<std::string_view>{}(q.view());
  }
};
