#include "csvdialect/detector.hpp"

#include <algorithm>
#include <limits>

#include "csvdialect/error.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

bool contains_any(const std::string& cell, const std::vector<char32_t>& chars) {
  for (std::size_t pos = 0; pos < cell.size();) {
    const auto cur = decode_utf8(cell, pos);
    if (std::find(chars.begin(), chars.end(), cur.code_point) != chars.end()) {
      return true;
    }
    pos += cur.length;
  }
  return false;
}

double wrangler_from_table(const CellTable& table, const std::vector<char32_t>& other_delimiters,
                           TypeCache& cache) {
  std::size_t width = 0;
  for (const auto& row : table.rows) {
    width = std::max(width, row.size());
  }
  const std::size_t slots = width * table.rows.size();
  if (slots == 0) {
    throw EmptyInputError("wrangler score needs at least one cell");
  }

  std::size_t empty = 0;
  std::size_t with_delimiter = 0;
  double homogeneity_sum = 0.0;
  for (std::size_t col = 0; col < width; ++col) {
    std::map<DataType, std::size_t> counts;
    std::size_t present = 0;
    for (const auto& row : table.rows) {
      if (col >= row.size()) {
        ++empty;  // padding
        continue;
      }
      const std::string& cell = row[col];
      ++present;
      ++counts[cache.type_of(cell)];
      if (cell.empty()) {
        ++empty;
      }
      if (contains_any(cell, other_delimiters)) {
        ++with_delimiter;
      }
    }
    double homogeneity = 0.0;
    for (const auto& [type, count] : counts) {
      const double p = static_cast<double>(count) / static_cast<double>(present);
      homogeneity += p * p;
    }
    homogeneity_sum += homogeneity;
  }
  const double total = static_cast<double>(slots);
  return homogeneity_sum / static_cast<double>(width) - static_cast<double>(empty) / total -
         static_cast<double>(with_delimiter) / total;
}

std::vector<DialectChar> potential_delimiters(std::string_view text, const CharacterPolicy& policy) {
  return get_delimiters(filter_urls(text), policy);
}

std::vector<char32_t> competing_delimiters(const std::vector<DialectChar>& all, const Dialect& d) {
  std::vector<char32_t> out;
  for (const auto& c : all) {
    if (c && c != d.delimiter) {
      out.push_back(*c);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(DetectorVariant variant) {
  switch (variant) {
    case DetectorVariant::Full: return "full";
    case DetectorVariant::PatternOnly: return "pattern";
    case DetectorVariant::TypeOnly: return "type";
    case DetectorVariant::NoTieBreak: return "no-tie";
    case DetectorVariant::Wrangler: return "wrangler";
  }
  return "full";
}

std::optional<DetectorVariant> variant_from_string(std::string_view name) {
  for (auto v : {DetectorVariant::Full, DetectorVariant::PatternOnly, DetectorVariant::TypeOnly,
                 DetectorVariant::NoTieBreak, DetectorVariant::Wrangler}) {
    if (to_string(v) == name) {
      return v;
    }
  }
  return std::nullopt;
}

std::string_view to_string(DetectionStatus status) {
  switch (status) {
    case DetectionStatus::Detected: return "detected";
    case DetectionStatus::TieUnbroken: return "tie_unbroken";
    case DetectionStatus::EmptyInput: return "empty_input";
  }
  return "empty_input";
}

double wrangler_score(std::string_view text, const Dialect& dialect,
                      const std::vector<char32_t>& other_delimiters, TypeCache* cache) {
  TypeCache local;
  return wrangler_from_table(parse(text, dialect), other_delimiters,
                             cache != nullptr ? *cache : local);
}

double wrangler_score(std::string_view text, const Dialect& dialect) {
  return wrangler_score(
      text, dialect,
      competing_delimiters(potential_delimiters(text, CharacterPolicy::defaults()), dialect));
}

std::optional<Dialect> break_ties(std::string_view text, std::span<const Dialect> ties) {
  std::vector<Dialect> alive(ties.begin(), ties.end());
  std::sort(alive.begin(), alive.end());
  alive.erase(std::unique(alive.begin(), alive.end()), alive.end());

  std::map<Dialect, CellTable> tables;
  auto table = [&](const Dialect& d) -> const CellTable& {
    auto it = tables.find(d);
    if (it == tables.end()) {
      it = tables.emplace(d, parse(text, d)).first;
    }
    return it->second;
  };
  // The delimiter never separates two cells.
  auto inert_delimiter = [&](const Dialect& d) {
    return !d.delimiter || table(d) == table(Dialect{std::nullopt, d.quote_char, d.escape_char});
  };
  // Should `x` give way to `y`?
  auto yields_to = [&](const Dialect& x, const Dialect& y) {
    const bool same_delim = x.delimiter == y.delimiter;
    const bool same_quote = x.quote_char == y.quote_char;
    const bool same_escape = x.escape_char == y.escape_char;
    if (same_delim + same_quote + same_escape != 2) {
      return false;
    }
    if (!same_quote) {
      return x.quote_char && !y.quote_char && table(x) == table(y);
    }
    if (!same_escape) {
      return x.escape_char && !y.escape_char && table(x) == table(y);
    }
    if (x.delimiter && !y.delimiter) {
      return table(x) == table(y);
    }
    if (x.delimiter && y.delimiter) {
      return inert_delimiter(x) && !inert_delimiter(y);
    }
    return false;
  };

  while (alive.size() > 1) {
    std::vector<Dialect> survivors;
    for (const auto& x : alive) {
      const bool dropped = std::any_of(alive.begin(), alive.end(), [&](const Dialect& y) {
        return !(x == y) && yields_to(x, y);
      });
      if (!dropped) {
        survivors.push_back(x);
      }
    }
    if (survivors.size() == alive.size()) {
      break;
    }
    alive = std::move(survivors);
  }
  if (alive.size() == 1) {
    return alive.front();
  }
  return std::nullopt;
}

DetectionOutcome detect(std::string_view text, const DetectorOptions& options) {
  DetectionOutcome outcome;
  if (text.empty()) {
    outcome.status = DetectionStatus::EmptyInput;
    return outcome;
  }
  options.constants.validate();
  outcome.candidates = get_dialects(text, options.policy);

  const auto variant = options.variant;
  const bool prunable = options.prune &&
                        (variant == DetectorVariant::Full || variant == DetectorVariant::NoTieBreak);
  TypeCache cache;
  const auto all_delimiters = variant == DetectorVariant::Wrangler
                                  ? potential_delimiters(text, options.policy)
                                  : std::vector<DialectChar>{};
  std::vector<Dialect> best;
  double q_max = -std::numeric_limits<double>::infinity();

  for (const auto& dialect : outcome.candidates) {
    const ParseResult parsed = parse_with_patterns(text, dialect);
    ScoreBreakdown s;
    s.cells_total = parsed.table.cell_count();

    switch (variant) {
      case DetectorVariant::Full:
      case DetectorVariant::NoTieBreak: {
        const auto patterns = parsed.pattern_table();
        s.patterns_distinct = patterns.distinct();
        s.pattern = pattern_score(patterns, options.constants);
        // The clamped type score is at most 1, so q <= pattern.
        if (prunable && s.pattern < q_max) {
          outcome.pruned.push_back(dialect);
          continue;
        }
        const auto types = type_score(parsed.table, options.constants, &cache);
        s.type_raw = types.raw;
        s.type_clamped = types.clamped;
        s.q = s.pattern * s.type_clamped;
        break;
      }
      case DetectorVariant::PatternOnly: {
        const auto patterns = parsed.pattern_table();
        s.patterns_distinct = patterns.distinct();
        s.pattern = pattern_score(patterns, options.constants);
        s.q = s.pattern;
        break;
      }
      case DetectorVariant::TypeOnly: {
        s.patterns_distinct = parsed.pattern_table().distinct();
        const auto types = type_score(parsed.table, options.constants, &cache);
        s.type_raw = types.raw;
        s.type_clamped = types.clamped;
        s.q = s.type_clamped;
        break;
      }
      case DetectorVariant::Wrangler: {
        s.patterns_distinct = parsed.pattern_table().distinct();
        s.q = wrangler_from_table(parsed.table,
                                  competing_delimiters(all_delimiters, dialect), cache);
        break;
      }
    }

    outcome.breakdowns.emplace(dialect, s);
    if (s.q > q_max) {
      q_max = s.q;
      best.assign(1, dialect);
    } else if (s.q == q_max) {
      best.push_back(dialect);
    }
  }

  if (best.size() == 1) {
    outcome.status = DetectionStatus::Detected;
    outcome.dialect = best.front();
    return outcome;
  }
  if (variant != DetectorVariant::NoTieBreak && variant != DetectorVariant::Wrangler) {
    if (auto winner = break_ties(text, best)) {
      outcome.status = DetectionStatus::Detected;
      outcome.dialect = *winner;
      return outcome;
    }
  }
  outcome.status = DetectionStatus::TieUnbroken;
  outcome.tie_set = std::move(best);
  return outcome;
}

nlohmann::json to_json(const DetectionOutcome& outcome, bool include_scores) {
  nlohmann::json j;
  j["status"] = to_string(outcome.status);
  j["dialect"] = outcome.dialect ? to_json(*outcome.dialect) : nlohmann::json(nullptr);
  auto ties = nlohmann::json::array();
  for (const auto& d : outcome.tie_set) {
    ties.push_back(to_json(d));
  }
  j["ties"] = std::move(ties);
  if (include_scores) {
    auto scores = nlohmann::json::array();
    for (const auto& [dialect, breakdown] : outcome.breakdowns) {
      auto entry = to_json(breakdown);
      entry["dialect"] = to_json(dialect);
      scores.push_back(std::move(entry));
    }
    j["scores"] = std::move(scores);
    auto pruned = nlohmann::json::array();
    for (const auto& d : outcome.pruned) {
      pruned.push_back(to_json(d));
    }
    j["pruned"] = std::move(pruned);
  }
  return j;
}

}  // namespace csvdialect
