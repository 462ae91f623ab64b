#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// Thin UTF-8 helpers over ICU. Invalid bytes decode as U+FFFD and advance by
// one byte so scanning always terminates.
namespace migraine::unicode {

struct Decoded {
  char32_t cp;
  std::size_t length;  // bytes consumed
};

Decoded decode_at(std::string_view s, std::size_t pos);

/// Code point ending right before byte offset `pos` (pos > 0).
Decoded decode_before(std::string_view s, std::size_t pos);

void append_utf8(std::string& out, char32_t cp);

/// Full Unicode case folding (e.g. "Straße" -> "strasse").
std::string fold_case(std::string_view s);

bool is_alnum(char32_t cp);
bool is_alpha(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);
bool is_space(char32_t cp);

/// Simple (single code point) case mappings.
char32_t to_upper(char32_t cp);
char32_t to_lower(char32_t cp);

/// Number of code points.
std::size_t length(std::string_view s);

}  // namespace migraine::unicode
