#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace csvdialect {

/// A single dialect character; std::nullopt stands for "absent" (the empty
/// marker). Absent sorts before every code point.
using DialectChar = std::optional<char32_t>;

/// UTF-8 text of a dialect character, the empty string when absent.
std::string to_string(const DialectChar& c);

/// Inverse of to_string: "" maps to absent, otherwise exactly one code point.
DialectChar dialect_char_from_string(std::string_view text);

struct Dialect {
  DialectChar delimiter;
  DialectChar quote_char;
  DialectChar escape_char;

  /// No two present fields hold the same character.
  bool is_valid() const;

  std::string to_string() const;

  auto operator<=>(const Dialect&) const = default;
  bool operator==(const Dialect&) const = default;
};

nlohmann::json to_json(const Dialect& dialect);
Dialect dialect_from_json(const nlohmann::json& j);

/// Character classes consulted while enumerating candidate dialects.
struct CharacterPolicy {
  std::set<char32_t> blocked_delimiters;
  std::set<std::string> blocked_categories;
  std::set<char32_t> allowed_quotes;
  std::set<char32_t> blocked_escapes;

  static const CharacterPolicy& defaults();

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on unknown categories or multi-character
  /// entries.
  static CharacterPolicy from_json(const nlohmann::json& j);

  bool operator==(const CharacterPolicy&) const = default;
};

/// Ordered, duplicate-free set of candidate dialects (delimiter, then quote,
/// then escape; absent first in each field).
class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<Dialect> dialects);

  bool contains(const Dialect& d) const;
  std::size_t size() const noexcept { return dialects_.size(); }
  bool empty() const noexcept { return dialects_.empty(); }
  const std::vector<Dialect>& dialects() const noexcept { return dialects_; }
  auto begin() const noexcept { return dialects_.begin(); }
  auto end() const noexcept { return dialects_.end(); }

  bool operator==(const CandidateSet&) const = default;

 private:
  std::vector<Dialect> dialects_;
};

/// Pattern used to strip URLs before counting candidate characters: a
/// scheme-qualified or "www."-prefixed address extending over URL characters.
/// Quote characters, the backslash, '|', '^' and whitespace end a match.
std::string_view url_filter_pattern();

/// Replaces each URL match with the single letter "U".
std::string filter_urls(std::string_view text);

/// Absent plus TAB plus every character that is neither blocked nor in a
/// blocked general category. Ascending order, absent first.
std::vector<DialectChar> get_delimiters(std::string_view text,
                                        const CharacterPolicy& policy = CharacterPolicy::defaults());

/// Absent plus the allowed quote characters present in `text`.
std::vector<DialectChar> get_quotechars(std::string_view text,
                                        const CharacterPolicy& policy = CharacterPolicy::defaults());

/// True for "other punctuation" (Po) characters outside the blocked set.
bool is_potential_escape(char32_t c, const CharacterPolicy& policy = CharacterPolicy::defaults());

/// True when every occurrence of the dialect's delimiter in `text` sits
/// inside a quoted section (or when the delimiter never occurs). Requires a
/// delimiter.
bool masked_by_quote(std::string_view text, const Dialect& dialect);

/// Candidate dialects for `text`. Always contains the all-absent dialect.
CandidateSet get_dialects(std::string_view text,
                          const CharacterPolicy& policy = CharacterPolicy::defaults());

}  // namespace csvdialect
