#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace csvdialect {

/// One decoded code point and the number of UTF-8 bytes it occupied.
/// Malformed sequences decode to U+FFFD with a length of one byte.
struct DecodedChar {
  char32_t code_point;
  std::size_t length;
};

DecodedChar decode_utf8(std::string_view text, std::size_t pos);

void append_utf8(std::string& out, char32_t code_point);
std::string to_utf8(char32_t code_point);

/// Decodes a string that must contain exactly one code point.
/// Throws std::invalid_argument otherwise.
char32_t single_code_point(std::string_view text);

std::u32string to_u32(std::string_view text);

/// Distinct code points of `text` in ascending order.
std::vector<char32_t> unique_code_points(std::string_view text);

/// Two-letter Unicode general category ("Lu", "Po", ...), backed by the
/// ICU character database.
std::string_view general_category(char32_t code_point);

/// True if `name` is one of the 30 general category abbreviations.
bool is_category_name(std::string_view name);

/// Version of the Unicode character database used for categories.
std::string unicode_version();

}  // namespace csvdialect
