#include "csvdialect/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csvdialect/error.hpp"
#include "csvdialect/typeinfer.hpp"

namespace csvdialect {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

void ScoreConstants::validate() const {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("alpha must be positive");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("beta must be positive");
  }
}

nlohmann::json to_json(const ScoreBreakdown& s) {
  return {{"pattern", s.pattern},         {"type_raw", s.type_raw},
          {"type_clamped", s.type_clamped}, {"q", s.q},
          {"cells_total", s.cells_total}, {"patterns_distinct", s.patterns_distinct}};
}

DataType TypeCache::type_of(const std::string& cell) {
  if (auto it = types_.find(cell); it != types_.end()) {
    return it->second;
  }
  const DataType type = detect_type(cell);
  types_.emplace(cell, type);
  return type;
}

double pattern_score(const RowPatternTable& patterns, const ScoreConstants& consts) {
  if (patterns.counts.empty()) {
    throw EmptyInputError("pattern score needs at least one row");
  }
  CompensatedSum sum;
  for (const auto& [pattern, count] : patterns.counts) {
    const auto length = static_cast<double>(RowPatternTable::length(pattern));
    sum.add(static_cast<double>(count) * std::max(consts.alpha, length - 1.0) / length);
  }
  return sum.value() / static_cast<double>(patterns.distinct());
}

TypeScore type_score(const CellTable& table, const ScoreConstants& consts, TypeCache* cache) {
  std::size_t total = 0;
  std::size_t known = 0;
  for (const auto& row : table.rows) {
    for (const auto& cell : row) {
      ++total;
      if (cache != nullptr ? cache->is_known(cell) : is_known_type(cell)) {
        ++known;
      }
    }
  }
  if (total == 0) {
    throw EmptyInputError("type score needs at least one cell");
  }
  const double raw = static_cast<double>(known) / static_cast<double>(total);
  return {raw, std::max(consts.beta, raw)};
}

ScoreBreakdown consistency(const ParseResult& parsed, const ScoreConstants& consts,
                           TypeCache* cache) {
  const auto patterns = parsed.pattern_table();
  ScoreBreakdown s;
  s.pattern = pattern_score(patterns, consts);
  const auto types = type_score(parsed.table, consts, cache);
  s.type_raw = types.raw;
  s.type_clamped = types.clamped;
  s.q = s.pattern * s.type_clamped;
  s.cells_total = parsed.table.cell_count();
  s.patterns_distinct = patterns.distinct();
  return s;
}

ScoreBreakdown consistency(std::string_view text, const Dialect& dialect,
                           const ScoreConstants& consts) {
  if (text.empty()) {
    throw EmptyInputError("cannot score empty text");
  }
  return consistency(parse_with_patterns(text, dialect), consts);
}

}  // namespace csvdialect
