#include "migraine/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/ustring.h>
#include <unicode/utf8.h>

#include <vector>

#include "migraine/common.hpp"

namespace migraine::unicode {

Decoded decode_at(std::string_view s, std::size_t pos) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  auto i = static_cast<int32_t>(pos);
  const auto n = static_cast<int32_t>(s.size());
  UChar32 c = 0;
  U8_NEXT(p, i, n, c);
  if (c < 0) return {0xFFFD, 1};
  return {static_cast<char32_t>(c), static_cast<std::size_t>(i) - pos};
}

Decoded decode_before(std::string_view s, std::size_t pos) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
  auto i = static_cast<int32_t>(pos);
  UChar32 c = 0;
  U8_PREV(p, 0, i, c);
  if (c < 0) return {0xFFFD, 1};
  return {static_cast<char32_t>(c), pos - static_cast<std::size_t>(i)};
}

void append_utf8(std::string& out, char32_t cp) {
  char buf[4];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(reinterpret_cast<std::uint8_t*>(buf), len, 4, static_cast<UChar32>(cp), err);
  if (err) {
    out += "\xEF\xBF\xBD";
    return;
  }
  out.append(buf, static_cast<std::size_t>(len));
}

std::string fold_case(std::string_view s) {
  // ASCII fast path; most social-media text never leaves it.
  bool ascii = true;
  for (unsigned char c : s) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(s);
    for (auto& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }

  UErrorCode status = U_ZERO_ERROR;
  int32_t u16_len = 0;
  u_strFromUTF8WithSub(nullptr, 0, &u16_len, s.data(), static_cast<int32_t>(s.size()), 0xFFFD,
                       nullptr, &status);
  status = U_ZERO_ERROR;
  std::vector<UChar> u16(static_cast<std::size_t>(u16_len) + 1);
  u_strFromUTF8WithSub(u16.data(), static_cast<int32_t>(u16.size()), &u16_len, s.data(),
                       static_cast<int32_t>(s.size()), 0xFFFD, nullptr, &status);
  if (U_FAILURE(status)) throw Error("utf-8 decode failed");

  std::vector<UChar> folded(static_cast<std::size_t>(u16_len) * 3 + 1);
  status = U_ZERO_ERROR;
  const int32_t folded_len = u_strFoldCase(folded.data(), static_cast<int32_t>(folded.size()),
                                           u16.data(), u16_len, U_FOLD_CASE_DEFAULT, &status);
  if (U_FAILURE(status)) throw Error("case folding failed");

  int32_t out_len = 0;
  status = U_ZERO_ERROR;
  u_strToUTF8(nullptr, 0, &out_len, folded.data(), folded_len, &status);
  std::string out(static_cast<std::size_t>(out_len), '\0');
  status = U_ZERO_ERROR;
  u_strToUTF8(out.data(), out_len, &out_len, folded.data(), folded_len, &status);
  if (U_FAILURE(status) && status != U_STRING_NOT_TERMINATED_WARNING) {
    throw Error("utf-8 encode failed");
  }
  return out;
}

bool is_alnum(char32_t cp) { return u_isalnum(static_cast<UChar32>(cp)); }
bool is_alpha(char32_t cp) { return u_isalpha(static_cast<UChar32>(cp)); }
bool is_upper(char32_t cp) { return u_isupper(static_cast<UChar32>(cp)); }
bool is_lower(char32_t cp) { return u_islower(static_cast<UChar32>(cp)); }
bool is_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)); }
char32_t to_upper(char32_t cp) { return static_cast<char32_t>(u_toupper(static_cast<UChar32>(cp))); }
char32_t to_lower(char32_t cp) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))); }

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.size(); i += decode_at(s, i).length) ++n;
  return n;
}

}  // namespace migraine::unicode
