#include "csvdialect/unicode.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/uversion.h>

namespace csvdialect {

namespace {

// Indexed by ICU's UCharCategory enumerators.
constexpr std::array<std::string_view, U_CHAR_CATEGORY_COUNT> kCategoryNames = {
    "Cn", "Lu", "Ll", "Lt", "Lm", "Lo", "Mn", "Me", "Mc", "Nd",
    "Nl", "No", "Zs", "Zl", "Zp", "Cc", "Cf", "Co", "Cs", "Pd",
    "Ps", "Pe", "Pc", "Po", "Sm", "Sc", "Sk", "So", "Pi", "Pf",
};

constexpr char32_t kReplacement = 0xFFFD;

}  // namespace

DecodedChar decode_utf8(std::string_view text, std::size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    return {lead, 1};
  }
  std::size_t need = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    need = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    need = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    need = 3;
    cp = lead & 0x07;
  } else {
    return {kReplacement, 1};
  }
  if (pos + need >= text.size()) {
    return {kReplacement, 1};
  }
  for (std::size_t i = 1; i <= need; ++i) {
    const auto byte = static_cast<unsigned char>(text[pos + i]);
    if ((byte & 0xC0) != 0x80) {
      return {kReplacement, 1};
    }
    cp = (cp << 6) | (byte & 0x3F);
  }
  // Reject overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[need] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {kReplacement, 1};
  }
  return {cp, need + 1};
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

std::string to_utf8(char32_t cp) {
  std::string out;
  append_utf8(out, cp);
  return out;
}

char32_t single_code_point(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("expected a single character, got an empty string");
  }
  const auto decoded = decode_utf8(text, 0);
  if (decoded.length != text.size()) {
    throw std::invalid_argument("expected a single character, got \"" + std::string(text) + "\"");
  }
  return decoded.code_point;
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t pos = 0; pos < text.size();) {
    const auto decoded = decode_utf8(text, pos);
    out.push_back(decoded.code_point);
    pos += decoded.length;
  }
  return out;
}

std::vector<char32_t> unique_code_points(std::string_view text) {
  std::array<bool, 128> ascii{};
  std::vector<char32_t> out;
  for (std::size_t pos = 0; pos < text.size();) {
    const auto decoded = decode_utf8(text, pos);
    pos += decoded.length;
    if (decoded.code_point < 128) {
      if (!ascii[decoded.code_point]) {
        ascii[decoded.code_point] = true;
        out.push_back(decoded.code_point);
      }
    } else {
      out.push_back(decoded.code_point);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string_view general_category(char32_t cp) {
  const auto category = u_charType(static_cast<UChar32>(cp));
  if (category < 0 || category >= U_CHAR_CATEGORY_COUNT) {
    return "Cn";
  }
  return kCategoryNames[static_cast<std::size_t>(category)];
}

bool is_category_name(std::string_view name) {
  return std::find(kCategoryNames.begin(), kCategoryNames.end(), name) != kCategoryNames.end();
}

std::string unicode_version() { return U_UNICODE_VERSION; }

}  // namespace csvdialect
