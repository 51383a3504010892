#pragma once

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aslgloss::unicode {

inline bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

inline void ascii_lower_inplace(std::string& s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
}

inline std::string ascii_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

// NFC, then lowercase, then NFC again (lowercasing can produce decomposed sequences).
inline std::string nfc_lower(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (U_SUCCESS(status)) us = nfc->normalize(us, status);
  us.toLower(icu::Locale::getRoot());
  if (U_SUCCESS(status)) us = nfc->normalize(us, status);
  std::string out;
  us.toUTF8String(out);
  return out;
}

inline std::string to_upper(std::string_view text) {
  if (is_ascii(text)) return ascii_upper(text);
  icu::UnicodeString us = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  us.toUpper(icu::Locale::getRoot());
  std::string out;
  us.toUTF8String(out);
  return out;
}

/// Decodes UTF-8 into code points. Ill-formed sequences decode to U+FFFD.
inline std::vector<UChar32> decode(std::string_view s) {
  std::vector<UChar32> cps;
  cps.reserve(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  const auto len = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(p, i, len, c);
    cps.push_back(c < 0 ? 0xFFFD : c);
  }
  return cps;
}

inline void append(std::string& out, UChar32 c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
    return;
  }
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
}

inline bool is_letter(UChar32 c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  return u_isalpha(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

inline bool is_alnum(UChar32 c) {
  if (c < 0x80) return is_letter(c) || (c >= '0' && c <= '9');
  return is_letter(c);
}

/// True when every code point of `s` is an uppercase or caseless letter.
inline bool is_upper_word(std::string_view s) {
  if (s.empty()) return false;
  for (UChar32 c : decode(s)) {
    if (!is_letter(c)) return false;
    if (u_islower(c)) return false;
  }
  return true;
}

}  // namespace aslgloss::unicode
