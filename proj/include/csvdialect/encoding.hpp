#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace csvdialect {

/// Converts `bytes` in the declared encoding to UTF-8. A leading UTF-8 byte
/// order mark is dropped. Throws DecodeError with the offending byte offset,
/// or Error for an unknown encoding name.
std::string decode_to_utf8(std::string_view bytes, std::string_view encoding = "utf-8");

/// Reads the whole file. Throws Error if it is missing, a directory, or
/// unreadable.
std::string read_file_bytes(const std::filesystem::path& path);

struct DecodedFile {
  std::string text;
  std::string encoding;
};

/// Reads and decodes a file; with `latin1_fallback`, a decode failure is
/// retried once as ISO-8859-1.
DecodedFile read_text_file(const std::filesystem::path& path, std::string_view encoding = "utf-8",
                           bool latin1_fallback = false);

}  // namespace csvdialect
