#pragma once

#include <cstdint>
#include <string_view>

// Small UTF-8 / Hangul helpers used for suffix matching of postposition
// markers and for jamo-level conditions (e.g. "token ends in final ㄹ").

namespace kudc::hangul {

// Code point of the last UTF-8 character in s, or 0 if s is empty/invalid.
char32_t last_codepoint(std::string_view s);

// Final consonant (jongseong) of a precomposed Hangul syllable, returned as
// a compatibility jamo code point (ㄱ..ㅎ), or 0 when the syllable is open
// or cp is not a Hangul syllable.
char32_t final_consonant(char32_t cp);

// True if the last syllable of s carries the given final consonant, where
// jamo is a compatibility jamo given as UTF-8 (e.g. "ㄹ").
bool ends_with_final(std::string_view s, std::string_view jamo);

}  // namespace kudc::hangul
