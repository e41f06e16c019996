#include "kudc/hangul.hpp"

namespace kudc::hangul {

namespace {

// Decode one UTF-8 sequence starting at s[i]; returns 0 on malformed input.
char32_t decode_at(std::string_view s, size_t i, size_t* len) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  size_t n = 0;
  char32_t cp = 0;
  if (b0 < 0x80) {
    n = 1;
    cp = b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    n = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    n = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    n = 4;
    cp = b0 & 0x07;
  } else {
    return 0;
  }
  if (i + n > s.size()) return 0;
  for (size_t k = 1; k < n; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  *len = n;
  return cp;
}

// Jongseong index (1..27) to compatibility jamo.
constexpr char32_t kJongseong[28] = {
    0,      0x3131, 0x3132, 0x3133, 0x3134, 0x3135, 0x3136, 0x3137, 0x3139,
    0x313A, 0x313B, 0x313C, 0x313D, 0x313E, 0x313F, 0x3140, 0x3141, 0x3142,
    0x3144, 0x3145, 0x3146, 0x3147, 0x3148, 0x314A, 0x314B, 0x314C, 0x314D,
    0x314E};

}  // namespace

char32_t last_codepoint(std::string_view s) {
  if (s.empty()) return 0;
  // Back up to the lead byte of the final sequence.
  size_t i = s.size();
  do {
    --i;
  } while (i > 0 && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80);
  size_t len = 0;
  const char32_t cp = decode_at(s, i, &len);
  return (len > 0 && i + len == s.size()) ? cp : 0;
}

char32_t final_consonant(char32_t cp) {
  if (cp < 0xAC00 || cp > 0xD7A3) return 0;
  return kJongseong[(cp - 0xAC00) % 28];
}

bool ends_with_final(std::string_view s, std::string_view jamo) {
  const char32_t want = last_codepoint(jamo);
  if (want == 0) return false;
  return final_consonant(last_codepoint(s)) == want;
}

}  // namespace kudc::hangul
