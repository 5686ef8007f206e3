#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "driftbench/error.hpp"

namespace driftbench::utf8 {

/// Decodes the code point starting at `pos`, advancing `pos` past it.
/// Rejects overlong forms, surrogates and values above U+10FFFF.
inline char32_t decode_next(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t length = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    cp = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    cp = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    cp = lead & 0x07;
    min_value = 0x10000;
  } else {
    throw EncodingError(start);
  }
  if (start + length > text.size()) throw EncodingError(start);
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(start + i);
    if ((cont & 0xC0) != 0x80) throw EncodingError(start + i);
    cp = (cp << 6) | (cont & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    throw EncodingError(start);
  }
  pos = start + length;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
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

/// Throws EncodingError at the first malformed sequence.
inline void validate(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) decode_next(text, pos);
}

namespace detail {

// Inclusive code point ranges treated as letters, digits or combining marks.
// Covers the alphabetic blocks of the Basic Multilingual Plane that show up
// in running text; symbols and punctuation inside those blocks are excluded.
inline constexpr std::array<std::pair<char32_t, char32_t>, 44> kWordRanges{{
    {U'0', U'9'},       {U'A', U'Z'},       {U'a', U'z'},       {0x00AA, 0x00AA},
    {0x00B5, 0x00B5},   {0x00BA, 0x00BA},   {0x00C0, 0x00D6},   {0x00D8, 0x00F6},
    {0x00F8, 0x02AF},   {0x0300, 0x036F},   {0x0370, 0x0374},   {0x0376, 0x037D},
    {0x037F, 0x037F},   {0x0386, 0x0386},   {0x0388, 0x03FF},   {0x0400, 0x0481},
    {0x0483, 0x052F},   {0x0531, 0x0556},   {0x0561, 0x0587},   {0x0591, 0x05BD},
    {0x05D0, 0x05EA},   {0x0610, 0x061A},   {0x0620, 0x0669},   {0x066E, 0x06D3},
    {0x0900, 0x0963},   {0x0966, 0x0DFF},   {0x0E01, 0x0E3A},   {0x0E40, 0x0E4E},
    {0x0E50, 0x0E59},   {0x10A0, 0x10FF},   {0x1100, 0x11FF},   {0x1E00, 0x1FBC},
    {0x1FC2, 0x1FCC},   {0x1FD0, 0x1FDB},   {0x1FE0, 0x1FEC},   {0x1FF2, 0x1FFC},
    {0x3041, 0x3096},   {0x30A1, 0x30FA},   {0x3400, 0x4DBF},   {0x4E00, 0x9FFF},
    {0xAC00, 0xD7A3},   {0xFF10, 0xFF19},   {0xFF21, 0xFF3A},   {0xFF41, 0xFF5A},
}};

}  // namespace detail

inline bool is_word_char(char32_t cp) {
  for (const auto& [lo, hi] : detail::kWordRanges) {
    if (cp < lo) return false;
    if (cp <= hi) return true;
  }
  return false;
}

inline bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

inline bool is_apostrophe(char32_t cp) { return cp == U'\'' || cp == 0x2019; }

inline bool is_hyphen(char32_t cp) { return cp == U'-' || cp == 0x2010 || cp == 0x2011; }

/// Simple one-to-one lowercase mapping for the Latin, Greek, Cyrillic and
/// Armenian blocks. Idempotent: no output of this function is remapped.
inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= U'A' && cp <= U'Z') ? cp + 0x20 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x0130) return U'i';
  if (cp == 0x0178) return 0x00FF;
  if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E)) {
    return (cp % 2 == 1) ? cp + 1 : cp;
  }
  if (cp == 0x0386) return 0x03AC;
  if (cp >= 0x0388 && cp <= 0x038A) return cp + 37;
  if (cp == 0x038C) return 0x03CC;
  if (cp == 0x038E || cp == 0x038F) return cp + 63;
  if (cp >= 0x0391 && cp <= 0x03AB && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if ((cp >= 0x0460 && cp <= 0x0481) || (cp >= 0x048A && cp <= 0x04BF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x0531 && cp <= 0x0556) return cp + 0x30;
  if ((cp >= 0x1E00 && cp <= 0x1E95) || (cp >= 0x1EA0 && cp <= 0x1EFF)) {
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
  return cp;
}

}  // namespace driftbench::utf8
