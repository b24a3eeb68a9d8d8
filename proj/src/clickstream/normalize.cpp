#include "clirgate/clickstream/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "clirgate/error.hpp"

namespace clirgate::clickstream {

bool is_valid_utf8(std::string_view text) noexcept {
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

NormalizedQuery normalize(std::string_view raw) {
  if (!is_valid_utf8(raw)) {
    throw Error(ErrorKind::InvalidEncoding, "query is not valid UTF-8");
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvalidArgument, "ICU NFC normalizer unavailable");
  }

  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = nfc->normalize(text, status);
  text.foldCase(U_FOLD_CASE_DEFAULT);
  // Full case folding can yield decomposed sequences (e.g. U+0130).
  text = nfc->normalize(text, status);
  if (U_FAILURE(status)) {
    throw Error(ErrorKind::InvalidArgument, "ICU normalization failed");
  }

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) {
      collapsed.append(static_cast<UChar>(u' '));
      pending_space = false;
    }
    collapsed.append(c);
  }
  if (collapsed.isEmpty()) {
    throw Error(ErrorKind::EmptyAfterNormalization, "query is empty after normalization");
  }

  std::string out;
  collapsed.toUTF8String(out);
  return NormalizedQuery(std::move(out));
}

}  // namespace clirgate::clickstream
