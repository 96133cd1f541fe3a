#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "csvdialect/dialect.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/typeinfer.hpp"

namespace csvdialect {

struct ScoreConstants {
  /// Numerator floor for single-cell row patterns.
  double alpha = 1e-3;
  /// Lower clamp applied to the type score.
  double beta = 1e-10;

  /// Throws std::invalid_argument unless both constants are positive.
  void validate() const;
};

struct ScoreBreakdown {
  double pattern = 0.0;
  double type_raw = 0.0;
  double type_clamped = 0.0;
  double q = 0.0;
  std::size_t cells_total = 0;
  std::size_t patterns_distinct = 0;

  bool operator==(const ScoreBreakdown&) const = default;
};

nlohmann::json to_json(const ScoreBreakdown& s);

struct TypeScore {
  double raw = 0.0;
  double clamped = 0.0;
};

/// Memo of cell -> detected type, shared across the candidates of one
/// file. Not thread-safe.
class TypeCache {
 public:
  DataType type_of(const std::string& cell);
  bool is_known(const std::string& cell) { return type_of(cell) != DataType::Unknown; }

 private:
  std::unordered_map<std::string, DataType> types_;
};

/// (1/K) * sum_k N_k * max(alpha, L_k - 1) / L_k, summed in pattern order
/// with compensated addition. Throws EmptyInputError for an empty table.
double pattern_score(const RowPatternTable& patterns, const ScoreConstants& consts = {});

/// Fraction of cells with a known type, and that fraction clamped to
/// [beta, 1]. Throws EmptyInputError when the table has no cells.
TypeScore type_score(const CellTable& table, const ScoreConstants& consts = {},
                     TypeCache* cache = nullptr);

/// Both scores from one parse of `text` under `dialect`; q = pattern * type_clamped.
ScoreBreakdown consistency(std::string_view text, const Dialect& dialect,
                           const ScoreConstants& consts = {});

ScoreBreakdown consistency(const ParseResult& parsed, const ScoreConstants& consts = {},
                           TypeCache* cache = nullptr);

}  // namespace csvdialect
