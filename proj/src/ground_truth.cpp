#include <algorithm>

#include "csvdialect/evalgen.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/typeinfer.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

bool has_any(std::string_view cell, const std::vector<char32_t>& chars) {
  for (std::size_t pos = 0; pos < cell.size();) {
    const auto cur = decode_utf8(cell, pos);
    if (std::find(chars.begin(), chars.end(), cur.code_point) != chars.end()) {
      return true;
    }
    pos += cur.length;
  }
  return false;
}

bool passes(std::string_view text, const Dialect& d, const StrictTests& tests,
            const std::vector<char32_t>& quote_chars) {
  ParseDiagnostics diagnostics;
  const CellTable table = parse(text, d, &diagnostics);
  if (tests.clean_parse && (diagnostics.unterminated_quote || diagnostics.bare_carriage_returns > 0)) {
    return false;
  }
  if (tests.min_two_rows && table.rows.size() < 2) {
    return false;
  }
  const std::size_t width = table.rows.empty() ? 0 : table.rows.front().size();
  if (tests.min_two_columns && width < 2) {
    return false;
  }
  const std::vector<char32_t> own_quote = d.quote_char ? std::vector<char32_t>{*d.quote_char}
                                                       : std::vector<char32_t>{};
  for (const auto& row : table.rows) {
    if (tests.constant_width && row.size() != width) {
      return false;
    }
    for (const auto& cell : row) {
      if (tests.no_empty_cells && cell.empty()) {
        return false;
      }
      if (tests.no_multiline_cells && cell.find_first_of("\r\n") != std::string::npos) {
        return false;
      }
      if (tests.no_nested_quotes && has_any(cell, own_quote)) {
        return false;
      }
      if (tests.no_stray_quotes && has_any(cell, quote_chars)) {
        return false;
      }
      if (tests.known_types && !is_known_type(cell)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<Dialect> auto_ground_truth(std::string_view text, const StrictTests& tests,
                                         const CharacterPolicy& policy) {
  if (text.empty()) {
    return std::nullopt;
  }
  const std::vector<char32_t> quote_chars(policy.allowed_quotes.begin(), policy.allowed_quotes.end());
  std::optional<Dialect> found;
  for (const auto& d : get_dialects(text, policy)) {
    if (!d.delimiter || !passes(text, d, tests, quote_chars)) {
      continue;
    }
    if (found) {
      return std::nullopt;
    }
    found = d;
  }
  return found;
}

}  // namespace csvdialect
