#include "csvdialect/dialect.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <unicode/regex.h>
#include <unicode/unistr.h>

#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

constexpr char32_t kTab = U'\t';

// Scheme-qualified or www-prefixed address, running up to whitespace.
constexpr std::string_view kUrlPattern =
    R"((?:[A-Za-z][A-Za-z0-9+.\-]*://|www\.)[A-Za-z0-9\-._:/?#\[\]@!$&()*+,;=%]+)";

const icu::RegexPattern& url_regex() {
  static const std::unique_ptr<icu::RegexPattern> pattern = [] {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error;
    std::unique_ptr<icu::RegexPattern> p(icu::RegexPattern::compile(
        icu::UnicodeString::fromUTF8(icu::StringPiece(kUrlPattern.data(),
                                                      static_cast<int32_t>(kUrlPattern.size()))),
        parse_error, status));
    if (U_FAILURE(status)) {
      throw std::logic_error("URL pattern failed to compile");
    }
    return p;
  }();
  return *pattern;
}

std::set<char32_t> chars_from_json(const nlohmann::json& j, const char* key) {
  std::set<char32_t> out;
  for (const auto& item : j.at(key)) {
    out.insert(single_code_point(item.get<std::string>()));
  }
  return out;
}

nlohmann::json chars_to_json(const std::set<char32_t>& chars) {
  auto arr = nlohmann::json::array();
  for (char32_t c : chars) {
    arr.push_back(to_utf8(c));
  }
  return arr;
}

}  // namespace

std::string to_string(const DialectChar& c) { return c ? to_utf8(*c) : std::string(); }

DialectChar dialect_char_from_string(std::string_view text) {
  if (text.empty()) {
    return std::nullopt;
  }
  return single_code_point(text);
}

bool Dialect::is_valid() const {
  auto clash = [](const DialectChar& a, const DialectChar& b) { return a && b && *a == *b; };
  return !clash(delimiter, quote_char) && !clash(delimiter, escape_char) &&
         !clash(quote_char, escape_char);
}

std::string Dialect::to_string() const {
  auto show = [](const DialectChar& c) -> std::string {
    if (!c) {
      return "''";
    }
    if (*c == kTab) {
      return "'\\t'";
    }
    return "'" + to_utf8(*c) + "'";
  };
  return "(" + show(delimiter) + ", " + show(quote_char) + ", " + show(escape_char) + ")";
}

nlohmann::json to_json(const Dialect& d) {
  return {{"delimiter", to_string(d.delimiter)},
          {"quotechar", to_string(d.quote_char)},
          {"escapechar", to_string(d.escape_char)}};
}

Dialect dialect_from_json(const nlohmann::json& j) {
  Dialect d{dialect_char_from_string(j.at("delimiter").get<std::string>()),
            dialect_char_from_string(j.at("quotechar").get<std::string>()),
            dialect_char_from_string(j.at("escapechar").get<std::string>())};
  if (!d.is_valid()) {
    throw std::invalid_argument("dialect fields must be distinct: " + d.to_string());
  }
  return d;
}

const CharacterPolicy& CharacterPolicy::defaults() {
  static const CharacterPolicy policy{
      {U'.', U'/', U'"', U'\''},
      {"Lu", "Ll", "Lt", "Lm", "Lo", "Nd", "Nl", "No", "Ps", "Pe", "Cc", "Co"},
      {U'\'', U'"', U'~'},
      {U'!', U'?', U'"', U'\'', U'.', U',', U';', U':', U'%', U'*', U'&', U'#'},
  };
  return policy;
}

nlohmann::json CharacterPolicy::to_json() const {
  return {{"blocked_delimiters", chars_to_json(blocked_delimiters)},
          {"blocked_categories", blocked_categories},
          {"allowed_quotes", chars_to_json(allowed_quotes)},
          {"blocked_escapes", chars_to_json(blocked_escapes)}};
}

CharacterPolicy CharacterPolicy::from_json(const nlohmann::json& j) {
  CharacterPolicy policy;
  policy.blocked_delimiters = chars_from_json(j, "blocked_delimiters");
  for (const auto& item : j.at("blocked_categories")) {
    auto name = item.get<std::string>();
    if (!is_category_name(name)) {
      throw std::invalid_argument("unknown Unicode general category \"" + name + "\"");
    }
    policy.blocked_categories.insert(std::move(name));
  }
  policy.allowed_quotes = chars_from_json(j, "allowed_quotes");
  policy.blocked_escapes = chars_from_json(j, "blocked_escapes");
  return policy;
}

CandidateSet::CandidateSet(std::vector<Dialect> dialects) : dialects_(std::move(dialects)) {
  std::sort(dialects_.begin(), dialects_.end());
  dialects_.erase(std::unique(dialects_.begin(), dialects_.end()), dialects_.end());
}

bool CandidateSet::contains(const Dialect& d) const {
  return std::binary_search(dialects_.begin(), dialects_.end(), d);
}

std::string_view url_filter_pattern() { return kUrlPattern; }

std::string filter_urls(std::string_view text) {
  // Cheap rejection: every match contains "://" or "www.".
  if (text.find("://") == std::string_view::npos && text.find("www.") == std::string_view::npos) {
    return std::string(text);
  }
  UErrorCode status = U_ZERO_ERROR;
  const auto input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  std::unique_ptr<icu::RegexMatcher> matcher(url_regex().matcher(input, status));
  if (U_FAILURE(status)) {
    throw std::runtime_error("URL matcher could not be created");
  }
  const auto replaced = matcher->replaceAll(icu::UnicodeString(u"U"), status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("URL replacement failed");
  }
  std::string out;
  replaced.toUTF8String(out);
  return out;
}

std::vector<DialectChar> get_delimiters(std::string_view text, const CharacterPolicy& policy) {
  std::vector<DialectChar> out{std::nullopt};
  for (char32_t c : unique_code_points(text)) {
    if (c == kTab || (!policy.blocked_delimiters.contains(c) &&
                      !policy.blocked_categories.contains(std::string(general_category(c))))) {
      out.emplace_back(c);
    }
  }
  return out;
}

std::vector<DialectChar> get_quotechars(std::string_view text, const CharacterPolicy& policy) {
  std::vector<DialectChar> out{std::nullopt};
  for (char32_t c : unique_code_points(text)) {
    if (policy.allowed_quotes.contains(c)) {
      out.emplace_back(c);
    }
  }
  return out;
}

bool is_potential_escape(char32_t c, const CharacterPolicy& policy) {
  return !policy.blocked_escapes.contains(c) && general_category(c) == "Po";
}

bool masked_by_quote(std::string_view text, const Dialect& d) {
  if (!d.delimiter) {
    throw std::invalid_argument("masked_by_quote requires a delimiter");
  }
  const char32_t delim = *d.delimiter;
  const auto quote = d.quote_char;
  const auto escape = d.escape_char;

  bool in_quotes = false;
  std::size_t pos = 0;
  auto peek = [&](std::size_t at) -> std::optional<DecodedChar> {
    if (at >= text.size()) {
      return std::nullopt;
    }
    return decode_utf8(text, at);
  };
  while (pos < text.size()) {
    const auto cur = decode_utf8(text, pos);
    const char32_t c = cur.code_point;
    pos += cur.length;
    if (escape && c == *escape) {
      if (auto next = peek(pos);
          next && (next->code_point == delim || (quote && next->code_point == *quote) ||
                   next->code_point == *escape)) {
        pos += next->length;
      }
      continue;
    }
    if (quote && c == *quote) {
      if (!in_quotes) {
        in_quotes = true;
      } else if (auto next = peek(pos); next && next->code_point == *quote) {
        pos += next->length;
      } else {
        in_quotes = false;
      }
      continue;
    }
    if (c == delim && !in_quotes) {
      return false;
    }
  }
  return true;
}

CandidateSet get_dialects(std::string_view text, const CharacterPolicy& policy) {
  const std::string filtered = filter_urls(text);
  const auto delimiters = get_delimiters(filtered, policy);
  const auto quotes = get_quotechars(filtered, policy);

  // For every potential escape character, the characters seen right after it.
  std::map<char32_t, std::set<char32_t>> followers;
  const std::u32string chars = to_u32(filtered);
  for (std::size_t i = 0; i + 1 < chars.size(); ++i) {
    if (is_potential_escape(chars[i], policy)) {
      followers[chars[i]].insert(chars[i + 1]);
    }
  }

  std::vector<Dialect> out;
  for (const auto& delim : delimiters) {
    for (const auto& quote : quotes) {
      std::vector<DialectChar> escapes{std::nullopt};
      for (const auto& [escape, next] : followers) {
        if ((delim && next.contains(*delim)) || (quote && next.contains(*quote))) {
          escapes.emplace_back(escape);
        }
      }
      for (const auto& escape : escapes) {
        Dialect d{delim, quote, escape};
        if (!d.is_valid()) {
          continue;
        }
        if (d.delimiter && masked_by_quote(text, d)) {
          continue;
        }
        out.push_back(d);
      }
    }
  }
  return CandidateSet(std::move(out));
}

}  // namespace csvdialect
