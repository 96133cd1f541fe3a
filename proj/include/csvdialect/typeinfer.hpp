#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace csvdialect {

enum class DataType {
  Empty,
  Url,
  Email,
  NumberGrouped,
  NumberPlain,
  Time,
  Percentage,
  Currency,
  Alphanumeric,
  NA,
  Date,
  DateTime,
  Unknown,
};

std::string_view to_string(DataType type);

/// Ordered list of whole-cell regular expressions; the first match wins.
///
/// Patterns use ICU regular expression syntax and are matched against the
/// complete cell. Whitespace is never trimmed.
class TypeRegistry {
 public:
  struct Entry {
    DataType type;
    std::string pattern;
  };

  /// The standard registry, compiled once and shared.
  static const TypeRegistry& standard();

  explicit TypeRegistry(std::vector<Entry> entries);
  ~TypeRegistry();
  TypeRegistry(const TypeRegistry&) = delete;
  TypeRegistry& operator=(const TypeRegistry&) = delete;

  DataType detect(std::string_view cell) const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Patterns and evaluation order, for auditing.
  nlohmann::json dump() const;

 private:
  struct Compiled;

  std::vector<Entry> entries_;
  std::unique_ptr<Compiled> compiled_;
  std::uint64_t id_;
};

/// Individual date layouts that make up the Date entry of the standard
/// registry, one regular expression each.
const std::vector<std::string>& date_formats();

DataType detect_type(std::string_view cell);

bool is_known_type(std::string_view cell);

}  // namespace csvdialect
