#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "csvdialect/dialect.hpp"

namespace csvdialect {

using Row = std::vector<std::string>;

/// Rows of string cells as produced by the parser. Rows may differ in
/// length; every parsed row has at least one cell.
struct CellTable {
  std::vector<Row> rows;

  std::size_t cell_count() const noexcept;
  bool operator==(const CellTable&) const = default;
};

/// Non-fatal conditions seen while parsing.
struct ParseDiagnostics {
  bool unterminated_quote = false;
  std::size_t bare_carriage_returns = 0;

  bool operator==(const ParseDiagnostics&) const = default;
};

/// Multiset of abstract row patterns over {C, D, Q}, keyed in byte order.
struct RowPatternTable {
  std::map<std::string, std::size_t> counts;

  std::size_t distinct() const noexcept { return counts.size(); }
  std::size_t total_rows() const noexcept;

  /// Number of cells described by a pattern: one more than its D count.
  static std::size_t length(std::string_view pattern) noexcept;

  bool operator==(const RowPatternTable&) const = default;
};

/// Table plus per-row patterns from a single pass over the text.
struct ParseResult {
  CellTable table;
  std::vector<std::string> row_patterns;
  ParseDiagnostics diagnostics;

  RowPatternTable pattern_table() const;
};

/// Full parse under `dialect`.
///
/// Records end at LF, CRLF or CR outside quoted sections, and a trailing
/// newline does not open an empty record. A quote character opens a quoted
/// section only at the start of a cell; inside it a doubled quote yields
/// one literal quote. Surrounding quotes are stripped only when they enclose
/// the whole cell, otherwise the cell keeps its raw text. The escape
/// character is honoured only before the delimiter, the quote character or
/// itself. An unterminated quoted section is closed at end of input and
/// reported through the diagnostics.
ParseResult parse_with_patterns(std::string_view text, const Dialect& dialect);

CellTable parse(std::string_view text, const Dialect& dialect,
                ParseDiagnostics* diagnostics = nullptr);

/// Row-pattern abstraction: C for each run of cell content (an empty cell is
/// one C), D for each separating delimiter, Q for each quote character the
/// parser left in place.
RowPatternTable abstract_rows(std::string_view text, const Dialect& dialect);

struct FormatOptions {
  enum class Quoting { Minimal, All };

  Quoting quoting = Quoting::Minimal;
  /// Write embedded quote characters as escape+quote instead of doubling
  /// them. Only honoured when the dialect has an escape character.
  bool escape_quotes = false;
  std::string line_terminator = "\n";
  bool trailing_newline = false;
  /// Optional hook to quote additional cells under Minimal quoting.
  std::function<bool(std::size_t row, std::size_t column, std::string_view cell)> force_quote;
};

/// Writes `table` so that parse(format(table, d), d) == table.
/// Throws FormatError naming the first cell that cannot be represented.
std::string format(const CellTable& table, const Dialect& dialect,
                   const FormatOptions& options = {});

}  // namespace csvdialect
