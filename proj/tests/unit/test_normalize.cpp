#include <gtest/gtest.h>

#include "clirgate/clickstream/normalize.hpp"
#include "error_matchers.hpp"

using clirgate::ErrorKind;
using clirgate::clickstream::is_valid_utf8;
using clirgate::clickstream::normalize;

TEST(Normalize, CollapsesWhitespaceAndFoldsCase) {
  EXPECT_EQ(normalize("  Runny  Nose ").text(), "runny nose");
}

TEST(Normalize, CanonicalTextIsFixedPoint) { EXPECT_EQ(normalize("runny nose").text(), "runny nose"); }

TEST(Normalize, CzechGolden) {
  EXPECT_EQ(normalize("ČTYŘMĚSÍČNÍ dítě").text(), "čtyřměsíční dítě");
}

TEST(Normalize, DecomposedInputComposes) {
  // "dite" with combining caron and acute accents.
  const std::string decomposed = "di\xCC\x81te\xCC\x8C";
  EXPECT_EQ(normalize(decomposed).text(), "dítě");
  EXPECT_EQ(normalize(decomposed), normalize("DÍTĚ"));
}

TEST(Normalize, UnicodeWhitespaceCollapses) {
  // no-break space, tab, ideographic space, newline
  EXPECT_EQ(normalize("a\xC2\xA0\tb\xE3\x80\x80\nc").text(), "a b c");
}

TEST(Normalize, FullCaseFolding) { EXPECT_EQ(normalize("STRASSE Straße").text(), "strasse strasse"); }

TEST(Normalize, Idempotent) {
  for (const char* s : {"  Hello   WORLD ", "ČTYŘMĚSÍČNÍ dítě", "Ǆ x", "ΣΊΣΥΦΟΣ", "a\xC2\xA0" "b"}) {
    const auto once = normalize(s);
    EXPECT_EQ(normalize(once.text()), once) << s;
  }
}

TEST(Normalize, EmptyAfterNormalization) {
  EXPECT_ERROR_KIND(normalize(""), ErrorKind::EmptyAfterNormalization);
  EXPECT_ERROR_KIND(normalize(" \t\xC2\xA0 "), ErrorKind::EmptyAfterNormalization);
}

TEST(Normalize, InvalidEncoding) {
  EXPECT_ERROR_KIND(normalize("abc\xFF"), ErrorKind::InvalidEncoding);
  EXPECT_ERROR_KIND(normalize("\xC3"), ErrorKind::InvalidEncoding);
  EXPECT_ERROR_KIND(normalize("\xED\xA0\x80"), ErrorKind::InvalidEncoding);  // surrogate
}

TEST(Normalize, Utf8Validation) {
  EXPECT_TRUE(is_valid_utf8(""));
  EXPECT_TRUE(is_valid_utf8("dítě"));
  EXPECT_FALSE(is_valid_utf8("\xC0\x80"));  // overlong
  EXPECT_FALSE(is_valid_utf8("\x80"));
}
