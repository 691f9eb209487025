#pragma once

// Thin UTF-8 / code point layer over ICU. Invalid UTF-8 sequences decode to
// U+FFFD.

#include <cstddef>
#include <string>
#include <string_view>

namespace sumaudit::unicode {

std::u32string decode(std::string_view utf8);
std::string encode(std::u32string_view text);

std::string nfc(std::string_view utf8);

// Full Unicode lowercase mapping (root locale). ß stays ß.
std::string lower(std::string_view utf8);
std::u32string lower(std::u32string_view text);

bool is_space(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_upper(char32_t c);

std::size_t scalar_count(std::string_view utf8);

}  // namespace sumaudit::unicode
