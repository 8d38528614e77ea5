#include "stylo/unicode.hpp"

namespace stylo {

namespace {

// Decodes one code point; sets ok=false and consumes a single byte on a
// malformed sequence.
char32_t decode_impl(std::string_view text, std::size_t& pos, bool& ok) {
  const auto byte = [&](std::size_t i) -> std::uint8_t {
    return static_cast<std::uint8_t>(text[i]);
  };
  ok = true;
  const std::uint8_t b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }

  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    ok = false;
    return kReplacement;
  }

  if (pos + len > text.size()) {
    ++pos;
    ok = false;
    return kReplacement;
  }
  for (int i = 1; i < len; ++i) {
    const std::uint8_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      ok = false;
      return kReplacement;
    }
    cp = (cp << 6) | (b & 0x3F);
  }

  // Overlong encodings, surrogates, out of range.
  static constexpr char32_t kMinForLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    ok = false;
    return kReplacement;
  }
  pos += len;
  return cp;
}

}  // namespace

char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  bool ok = false;
  return decode_impl(text, pos, ok);
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  bool ok = true;
  while (pos < text.size()) {
    decode_impl(text, pos, ok);
    if (!ok) return false;
  }
  return true;
}

bool is_letter(char32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
  if (cp < 0xC0) return false;
  if (cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;  // Latin-1 letters
  if (cp <= 0x24F) return true;                     // Latin Extended-A/B
  if (cp >= 0x370 && cp <= 0x3FF)                   // Greek
    return cp != 0x37E && cp != 0x387;
  if (cp >= 0x400 && cp <= 0x4FF) return true;      // Cyrillic
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true;    // Latin Extended Additional
  return false;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0xA0;
}

char32_t fold_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Latin Extended-A: alternating upper/lower pairs, with a few quirks.
  if (cp >= 0x100 && cp <= 0x137 && (cp & 1) == 0) {
    if (cp == 0x130) return 0x69;  // dotted capital I
    return cp + 1;
  }
  if (cp >= 0x139 && cp <= 0x147 && (cp & 1) == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x176 && (cp & 1) == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17D && (cp & 1) == 1) return cp + 1;
  // Greek capitals.
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  // Cyrillic capitals.
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string fold_lower(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) append_utf8(out, fold_lower(decode_utf8(text, pos)));
  return out;
}

std::size_t cp_count(std::string_view text) {
  std::size_t pos = 0, n = 0;
  while (pos < text.size()) {
    decode_utf8(text, pos);
    ++n;
  }
  return n;
}

}  // namespace stylo
