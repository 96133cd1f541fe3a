#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csvdialect/dialect.hpp"
#include "csvdialect/scoring.hpp"

namespace csvdialect {

enum class DetectorVariant {
  Full,         ///< q = pattern * clamped type score, with tie-breaking
  PatternOnly,  ///< q = pattern score
  TypeOnly,     ///< q = clamped type score
  NoTieBreak,   ///< Full without tie-breaking
  Wrangler,     ///< table-suitability baseline; ties are failures
};

std::string_view to_string(DetectorVariant variant);
/// Accepts the CLI names: full, pattern, type, no-tie, wrangler.
std::optional<DetectorVariant> variant_from_string(std::string_view name);

enum class DetectionStatus { Detected, TieUnbroken, EmptyInput };

std::string_view to_string(DetectionStatus status);

struct DetectorOptions {
  DetectorVariant variant = DetectorVariant::Full;
  ScoreConstants constants;
  CharacterPolicy policy = CharacterPolicy::defaults();
  /// Skip the type score when the pattern score alone cannot reach the
  /// current best (Full and NoTieBreak only).
  bool prune = true;
};

struct DetectionOutcome {
  DetectionStatus status = DetectionStatus::EmptyInput;
  /// Set iff status == Detected.
  std::optional<Dialect> dialect;
  /// Dialects sharing the maximal score; non-empty iff status == TieUnbroken.
  std::vector<Dialect> tie_set;
  /// Scores of every candidate that was fully evaluated.
  std::map<Dialect, ScoreBreakdown> breakdowns;
  /// Candidates skipped by pruning, in evaluation order.
  std::vector<Dialect> pruned;
  CandidateSet candidates;
};

/// Scores every candidate of `text` in canonical order and returns the
/// argmax. The result depends only on the arguments.
DetectionOutcome detect(std::string_view text, const DetectorOptions& options = {});

/// Resolves ties between equally scored dialects. A dialect is dropped when
/// another tied dialect differs from it in exactly one field and either
/// leaves that field absent with an identical parse, or (for two present
/// delimiters) uses a delimiter that actually separates cells while the
/// dropped one's never does. Drops are applied simultaneously and repeated
/// until nothing changes. Returns the survivor if exactly one remains.
std::optional<Dialect> break_ties(std::string_view text, std::span<const Dialect> ties);

/// Table-suitability score: mean per-column type homogeneity (sum of
/// squared type proportions) minus the fraction of empty cells minus the
/// fraction of cells containing one of `other_delimiters`. Ragged rows are
/// padded with markers that count as empty but carry no type.
double wrangler_score(std::string_view text, const Dialect& dialect,
                      const std::vector<char32_t>& other_delimiters, TypeCache* cache = nullptr);

/// As above, taking every potential delimiter of `text` other than the
/// dialect's own as the competing set.
double wrangler_score(std::string_view text, const Dialect& dialect);

/// {status, dialect, ties[, scores, pruned]} with absent characters written
/// as "".
nlohmann::json to_json(const DetectionOutcome& outcome, bool include_scores = false);

}  // namespace csvdialect
