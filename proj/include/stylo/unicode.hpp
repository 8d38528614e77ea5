#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace stylo {

// UTF-8 decoding plus the small slice of Unicode the tokenizer needs:
// letter/digit tests and case folding for the Latin, Greek and Cyrillic
// ranges. Invalid byte sequences decode to U+FFFD.

inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes the code point starting at byte offset pos and advances pos past it.
// pos must be < text.size().
char32_t decode_utf8(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool valid_utf8(std::string_view text);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);

inline bool is_word_char(char32_t cp) { return is_letter(cp) || is_digit(cp); }

char32_t fold_lower(char32_t cp);

// True iff lowercasing changes the code point.
inline bool is_upper(char32_t cp) { return fold_lower(cp) != cp; }

// Code-point-wise lowercase of a UTF-8 string.
std::string fold_lower(std::string_view text);

// Number of code points in a UTF-8 string.
std::size_t cp_count(std::string_view text);

}  // namespace stylo
