#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "csvdialect/detector.hpp"
#include "csvdialect/dialect.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/scoring.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect::testing {

inline DialectChar ch(const std::string& s) { return dialect_char_from_string(s); }

inline Dialect make(const std::string& delim, const std::string& quote = "",
                    const std::string& escape = "") {
  return Dialect{ch(delim), ch(quote), ch(escape)};
}

/// Pattern score evaluated directly from per-row pattern strings: plain summation,
/// lengths counted from the D symbols.
inline double naive_pattern_score(const std::vector<std::string>& row_patterns, double alpha) {
  std::map<std::string, double> counts;
  for (const auto& p : row_patterns) {
    counts[p] += 1.0;
  }
  double total = 0.0;
  for (const auto& [pattern, n] : counts) {
    const double length = 1.0 + static_cast<double>(std::count(pattern.begin(), pattern.end(), 'D'));
    total += n * std::max(alpha, length - 1.0) / length;
  }
  return total / static_cast<double>(counts.size());
}

struct ExhaustiveResult {
  std::vector<Dialect> best;
  std::optional<Dialect> winner;
  bool tie_broken = true;
};

/// Scores every candidate without pruning, collects the exact-tie argmax in
/// candidate order and resolves ties with break_ties.
inline ExhaustiveResult exhaustive_detect(std::string_view text, bool tie_break = true,
                                          const ScoreConstants& consts = {}) {
  ExhaustiveResult r;
  double best = -1.0;
  for (const auto& d : get_dialects(text)) {
    const double q = consistency(parse_with_patterns(text, d), consts).q;
    if (q > best) {
      best = q;
      r.best.assign(1, d);
    } else if (q == best) {
      r.best.push_back(d);
    }
  }
  if (r.best.size() == 1) {
    r.winner = r.best.front();
  } else if (tie_break) {
    r.winner = break_ties(text, r.best);
  }
  return r;
}

/// Seeded generator of random tables and dialects for round-trip checks.
class TableFuzzer {
 public:
  explicit TableFuzzer(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Dialect dialect() {
    static const std::vector<char32_t> delims{U',', U';', U'\t', U'|', U':', U'^', U' ', U'#', U'§', U'→'};
    static const std::vector<char32_t> quotes{U'"', U'\'', U'~', U'`'};
    static const std::vector<char32_t> escapes{U'\\', U'@', U'/'};
    Dialect d;
    d.delimiter = delims[below(delims.size())];
    if (below(4) != 0) {
      d.quote_char = quotes[below(quotes.size())];
    }
    if (below(3) == 0) {
      d.escape_char = escapes[below(escapes.size())];
    }
    if (d.quote_char == d.delimiter) {
      d.quote_char.reset();
    }
    return d;
  }

  std::string cell(const Dialect& d) {
    std::vector<std::string> alphabet{"a", "b", "Z", "1", "9", ".", "-", " ", "é", "日", "x y", "\"",
                                      "'", "~", "\\", "@", "/"};
    alphabet.push_back(to_utf8(*d.delimiter));
    if (d.quote_char) {
      alphabet.push_back(to_utf8(*d.quote_char));
      alphabet.push_back("\n");
      alphabet.push_back("\r\n");
      alphabet.push_back("\r");
    }
    if (d.escape_char) {
      alphabet.push_back(to_utf8(*d.escape_char));
    }
    std::string out;
    const std::size_t n = below(7);
    for (std::size_t i = 0; i < n; ++i) {
      out += alphabet[below(alphabet.size())];
    }
    return out;
  }

  /// A random table that `d` can represent.
  CellTable table(const Dialect& d) {
    CellTable t;
    const std::size_t rows = 1 + below(6);
    for (std::size_t r = 0; r < rows; ++r) {
      Row row;
      const std::size_t cols = 1 + below(5);
      for (std::size_t c = 0; c < cols; ++c) {
        std::string value;
        for (int attempt = 0; attempt < 20; ++attempt) {
          value = cell(d);
          if (representable(value, d)) {
            break;
          }
          value.clear();
        }
        row.push_back(std::move(value));
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  }

  /// Without a quote character only the escape can protect special content.
  static bool representable(const std::string& value, const Dialect& d) {
    if (d.quote_char) {
      return true;
    }
    if (value.find_first_of("\r\n") != std::string::npos) {
      return false;
    }
    return d.escape_char || value.find(to_utf8(*d.delimiter)) == std::string::npos;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace csvdialect::testing
