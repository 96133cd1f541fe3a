#include "csvdialect/encoding.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>

#include <unicode/ucnv.h>
#include <unicode/unistr.h>

#include "csvdialect/error.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

std::string normalized_label(std::string_view encoding) {
  std::string out;
  for (char c : encoding) {
    if (c != '-' && c != '_') {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::string validate_utf8(std::string_view bytes) {
  std::size_t pos = 0;
  if (bytes.substr(0, 3) == "\xEF\xBB\xBF") {
    pos = 3;
  }
  for (std::size_t i = pos; i < bytes.size();) {
    const auto decoded = decode_utf8(bytes, i);
    // A genuine U+FFFD occupies three bytes.
    if (decoded.code_point == 0xFFFD && decoded.length == 1) {
      throw DecodeError(i, "UTF-8");
    }
    i += decoded.length;
  }
  return std::string(bytes.substr(pos));
}

std::string latin1_to_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  for (char c : bytes) {
    append_utf8(out, static_cast<unsigned char>(c));
  }
  return out;
}

std::string icu_to_utf8(std::string_view bytes, std::string_view encoding) {
  UErrorCode status = U_ZERO_ERROR;
  const std::string name(encoding);
  std::unique_ptr<UConverter, decltype(&ucnv_close)> converter(ucnv_open(name.c_str(), &status),
                                                               &ucnv_close);
  if (U_FAILURE(status)) {
    throw Error("unknown encoding \"" + name + "\"");
  }
  ucnv_setToUCallBack(converter.get(), UCNV_TO_U_CALLBACK_STOP, nullptr, nullptr, nullptr, &status);

  std::u16string buffer(bytes.size() * 2 + 16, u'\0');
  const char* source = bytes.data();
  const char* source_limit = bytes.data() + bytes.size();
  UChar* target = buffer.data();
  UChar* target_limit = buffer.data() + buffer.size();
  ucnv_toUnicode(converter.get(), &target, target_limit, &source, source_limit, nullptr, true,
                 &status);
  if (U_FAILURE(status)) {
    char invalid[32];
    int8_t invalid_length = sizeof(invalid);
    UErrorCode ignored = U_ZERO_ERROR;
    ucnv_getInvalidChars(converter.get(), invalid, &invalid_length, &ignored);
    const auto consumed = static_cast<std::size_t>(source - bytes.data());
    throw DecodeError(consumed - static_cast<std::size_t>(std::max<int8_t>(invalid_length, 0)),
                      name);
  }
  icu::UnicodeString text(buffer.data(), static_cast<int32_t>(target - buffer.data()));
  std::string out;
  text.toUTF8String(out);
  if (!out.empty() && out.compare(0, 3, "\xEF\xBB\xBF") == 0) {
    out.erase(0, 3);
  }
  return out;
}

}  // namespace

std::string decode_to_utf8(std::string_view bytes, std::string_view encoding) {
  const std::string label = normalized_label(encoding);
  if (label == "utf8") {
    return validate_utf8(bytes);
  }
  if (label == "latin1" || label == "iso88591" || label == "l1") {
    return latin1_to_utf8(bytes);
  }
  return icu_to_utf8(bytes, encoding);
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw Error(path.string() + ": is a directory");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(path.string() + ": cannot open file");
  }
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(path.string() + ": read error");
  }
  return bytes;
}

DecodedFile read_text_file(const std::filesystem::path& path, std::string_view encoding,
                           bool latin1_fallback) {
  const std::string bytes = read_file_bytes(path);
  try {
    return {decode_to_utf8(bytes, encoding), std::string(encoding)};
  } catch (const DecodeError&) {
    if (!latin1_fallback) {
      throw;
    }
    return {latin1_to_utf8(bytes), "latin-1"};
  }
}

}  // namespace csvdialect
