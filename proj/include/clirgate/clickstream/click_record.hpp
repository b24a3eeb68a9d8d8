#pragma once

#include <cstdint>
#include <string>

#include "clirgate/clickstream/normalize.hpp"

namespace clirgate::clickstream {

/// One logged search interaction: who searched, what they typed, what the
/// engine translated it to, and how many result items they clicked.
struct ClickRecord {
  std::string user_id;
  NormalizedQuery query;
  NormalizedQuery translation;
  std::uint64_t clicks = 0;

  friend bool operator==(const ClickRecord&, const ClickRecord&) = default;
};

/// Validates user_id and normalizes both text fields.
ClickRecord make_record(std::string_view user_id, std::string_view query,
                        std::string_view translation, std::uint64_t clicks);

}  // namespace clirgate::clickstream
