#include "csvdialect/parser.hpp"

#include <algorithm>

#include "csvdialect/error.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

constexpr char32_t kNone = 0xFFFFFFFF;

char32_t or_none(const DialectChar& c) { return c ? *c : kNone; }

enum class State { StartRecord, StartField, InField, InQuoted, QuoteInQuoted };

class Parser {
 public:
  Parser(std::string_view text, const Dialect& d)
      : text_(text),
        delim_(or_none(d.delimiter)),
        quote_(or_none(d.quote_char)),
        escape_(or_none(d.escape_char)) {}

  ParseResult run() {
    State state = State::StartRecord;
    std::size_t pos = 0;
    while (pos < text_.size()) {
      const auto cur = decode_utf8(text_, pos);
      const char32_t c = cur.code_point;
      const std::size_t next = pos + cur.length;

      switch (state) {
        case State::StartRecord:
        case State::StartField:
          if (c == quote_) {
            cell_start_ = pos;
            state = State::InQuoted;
            pos = next;
            continue;
          }
          state = State::InField;
          [[fallthrough]];

        case State::InField:
          if (c == delim_) {
            end_cell();
            pattern_.push_back('D');
            state = State::StartField;
            pos = next;
          } else if (c == U'\n' || c == U'\r') {
            pos = end_of_line(c, next);
            end_record();
            state = State::StartRecord;
          } else if (c == escape_) {
            pos = take_escape(pos, next);
          } else if (c == quote_) {
            // Quote in the middle of an unquoted cell: literal, but visible
            // in the pattern.
            append(pos, next);
            mark_quote();
            pos = next;
          } else {
            append(pos, next);
            mark_content();
            pos = next;
          }
          break;

        case State::InQuoted:
          if (c == escape_) {
            pos = take_escape(pos, next);
          } else if (c == quote_) {
            state = State::QuoteInQuoted;
            pos = next;
          } else {
            append(pos, next);
            mark_content();
            pos = next;
          }
          break;

        case State::QuoteInQuoted:
          if (c == quote_) {
            append(pos, next);
            mark_content();
            state = State::InQuoted;
            pos = next;
          } else if (c == delim_) {
            mark_content();
            end_cell();
            pattern_.push_back('D');
            state = State::StartField;
            pos = next;
          } else if (c == U'\n' || c == U'\r') {
            mark_content();
            pos = end_of_line(c, next);
            end_record();
            state = State::StartRecord;
          } else {
            // The quotes do not enclose the whole cell: keep the raw text
            // and continue as an unquoted cell at the current character.
            cell_.assign(text_.substr(cell_start_, pos - cell_start_));
            mark_content();
            state = State::InField;
          }
          break;
      }
    }

    switch (state) {
      case State::StartRecord:
        break;
      case State::InQuoted:
        result_.diagnostics.unterminated_quote = true;
        mark_content();
        end_record();
        break;
      case State::QuoteInQuoted:
        mark_content();
        end_record();
        break;
      case State::StartField:
      case State::InField:
        end_record();
        break;
    }
    return std::move(result_);
  }

 private:
  void append(std::size_t from, std::size_t to) { cell_.append(text_.data() + from, to - from); }

  void mark_content() {
    if (cell_pattern_.empty() || cell_pattern_.back() != 'C') {
      cell_pattern_.push_back('C');
    }
  }

  void mark_quote() { cell_pattern_.push_back('Q'); }

  // Escape at `pos`; honoured only before the delimiter, quote or itself.
  std::size_t take_escape(std::size_t pos, std::size_t next) {
    if (next < text_.size()) {
      const auto following = decode_utf8(text_, next);
      const char32_t f = following.code_point;
      if (f == delim_ || f == quote_ || f == escape_) {
        append(next, next + following.length);
        mark_content();
        return next + following.length;
      }
    }
    append(pos, next);
    mark_content();
    return next;
  }

  std::size_t end_of_line(char32_t c, std::size_t next) {
    if (c == U'\r') {
      if (next < text_.size() && text_[next] == '\n') {
        return next + 1;
      }
      ++result_.diagnostics.bare_carriage_returns;
    }
    return next;
  }

  void end_cell() {
    row_.push_back(std::move(cell_));
    cell_.clear();
    if (cell_pattern_.empty()) {
      cell_pattern_.push_back('C');
    }
    pattern_ += cell_pattern_;
    cell_pattern_.clear();
  }

  void end_record() {
    end_cell();
    result_.table.rows.push_back(std::move(row_));
    row_.clear();
    result_.row_patterns.push_back(std::move(pattern_));
    pattern_.clear();
  }

  std::string_view text_;
  char32_t delim_;
  char32_t quote_;
  char32_t escape_;

  ParseResult result_;
  Row row_;
  std::string cell_;
  std::string cell_pattern_;
  std::string pattern_;
  std::size_t cell_start_ = 0;
};

bool contains_char(std::string_view cell, char32_t c) {
  if (c == kNone) {
    return false;
  }
  if (c < 0x80) {
    return cell.find(static_cast<char>(c)) != std::string_view::npos;
  }
  return cell.find(to_utf8(c)) != std::string_view::npos;
}

}  // namespace

std::size_t CellTable::cell_count() const noexcept {
  std::size_t n = 0;
  for (const auto& row : rows) {
    n += row.size();
  }
  return n;
}

std::size_t RowPatternTable::total_rows() const noexcept {
  std::size_t n = 0;
  for (const auto& [pattern, count] : counts) {
    n += count;
  }
  return n;
}

std::size_t RowPatternTable::length(std::string_view pattern) noexcept {
  return static_cast<std::size_t>(std::count(pattern.begin(), pattern.end(), 'D')) + 1;
}

RowPatternTable ParseResult::pattern_table() const {
  RowPatternTable table;
  for (const auto& pattern : row_patterns) {
    ++table.counts[pattern];
  }
  return table;
}

ParseResult parse_with_patterns(std::string_view text, const Dialect& dialect) {
  return Parser(text, dialect).run();
}

CellTable parse(std::string_view text, const Dialect& dialect, ParseDiagnostics* diagnostics) {
  auto result = parse_with_patterns(text, dialect);
  if (diagnostics != nullptr) {
    *diagnostics = result.diagnostics;
  }
  return std::move(result.table);
}

RowPatternTable abstract_rows(std::string_view text, const Dialect& dialect) {
  return parse_with_patterns(text, dialect).pattern_table();
}

std::string format(const CellTable& table, const Dialect& d, const FormatOptions& options) {
  const char32_t delim = or_none(d.delimiter);
  const char32_t quote = or_none(d.quote_char);
  const char32_t escape = or_none(d.escape_char);
  const bool escape_quotes = options.escape_quotes && escape != kNone;

  std::string out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.empty()) {
      throw FormatError(r, 0, "row has no cells");
    }
    if (row.size() > 1 && delim == kNone) {
      throw FormatError(r, 1, "multiple cells require a delimiter");
    }
    if (r > 0) {
      out += options.line_terminator;
    }
    for (std::size_t col = 0; col < row.size(); ++col) {
      const std::string& cell = row[col];
      if (col > 0) {
        append_utf8(out, delim);
      }
      const bool has_newline = cell.find_first_of("\r\n") != std::string::npos;
      const bool has_delim = contains_char(cell, delim);
      const bool has_quote = contains_char(cell, quote);
      // A lone empty cell in the last row would vanish without a
      // terminating newline.
      const bool lone_empty_last =
          cell.empty() && row.size() == 1 && r + 1 == table.rows.size() && !options.trailing_newline;

      bool quoted = options.quoting == FormatOptions::Quoting::All || has_newline || has_delim ||
                    has_quote || lone_empty_last ||
                    (options.force_quote && options.force_quote(r, col, cell));
      if (quoted && quote == kNone) {
        if (options.quoting == FormatOptions::Quoting::All) {
          throw FormatError(r, col, "quoting every cell requires a quote character");
        }
        if (has_newline || lone_empty_last || escape == kNone) {
          throw FormatError(r, col, "cell needs quoting but the dialect has no quote character");
        }
        // Only the delimiter needs protecting; escape it instead.
        quoted = false;
      }

      if (quoted) {
        append_utf8(out, quote);
      }
      for (std::size_t pos = 0; pos < cell.size();) {
        const auto cur = decode_utf8(cell, pos);
        const char32_t c = cur.code_point;
        if (c == escape) {
          append_utf8(out, escape);
        } else if (c == quote) {
          append_utf8(out, escape_quotes ? escape : quote);
        } else if (c == delim && !quoted) {
          append_utf8(out, escape);
        }
        out.append(cell, pos, cur.length);
        pos += cur.length;
      }
      if (quoted) {
        append_utf8(out, quote);
      }
    }
  }
  if (options.trailing_newline && !table.rows.empty()) {
    out += options.line_terminator;
  }
  return out;
}

}  // namespace csvdialect
