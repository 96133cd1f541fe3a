#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "csvdialect/detector.hpp"
#include "csvdialect/dialect.hpp"

namespace csvdialect {

// ---------------------------------------------------------------------------
// Labeled corpora
// ---------------------------------------------------------------------------

enum class Origin { Human, Automatic, Synthetic };

std::string_view to_string(Origin origin);
std::optional<Origin> origin_from_string(std::string_view name);

/// Comma delimiter, no quote or double quote, no escape.
bool is_standard(const Dialect& dialect);

struct LabeledRecord {
  std::filesystem::path path;
  Dialect dialect;
  Origin origin = Origin::Synthetic;
  bool standard = false;
  /// Mess features present in the file (generator output only).
  std::vector<std::string> features;
};

/// Labels file: one JSON object per line,
/// {"filename", "delimiter", "quotechar", "escapechar", "origin"[, "features"]},
/// with absent characters written as "". Filenames are relative to
/// `corpus_dir`.
std::vector<LabeledRecord> read_labels(const std::filesystem::path& labels_file,
                                       const std::filesystem::path& corpus_dir);

std::string label_line(const LabeledRecord& record, const std::filesystem::path& corpus_dir);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct FileResult {
  std::string path;
  Dialect truth;
  Origin origin = Origin::Synthetic;
  bool standard = false;
  /// "detected", "tie_unbroken", "empty_input" or "error".
  std::string status;
  std::optional<Dialect> detected;
  std::string error;
  bool delimiter_ok = false;
  bool quote_ok = false;
  bool escape_ok = false;
  bool overall_ok = false;
  double runtime_ms = 0.0;
};

/// Correct-count tallies. A failure is wrong on every component.
struct Tally {
  std::size_t files = 0;
  std::size_t delimiter = 0;
  std::size_t quote = 0;
  std::size_t escape = 0;
  std::size_t overall = 0;
  std::size_t failures = 0;

  void add(const FileResult& result);
  static double percent(std::size_t count, std::size_t files);

  nlohmann::json to_json() const;
  bool operator==(const Tally&) const = default;
};

struct AccuracyReport {
  std::string variant;
  Tally all;
  Tally standard;
  Tally messy;
  std::map<Origin, Tally> by_origin;
  std::vector<FileResult> files;

  double failure_rate() const;
};

struct EvaluateOptions {
  DetectorOptions detector;
  std::string encoding = "utf-8";
  bool latin1_fallback = false;
  /// Worker threads; results do not depend on this.
  std::size_t jobs = 1;
};

/// Detects every file and compares each dialect component with its label.
/// Unreadable files are recorded as failures.
AccuracyReport evaluate(const std::vector<LabeledRecord>& corpus, const EvaluateOptions& options);

/// Evaluates in-memory texts; `records[i].path` is only used as a name.
AccuracyReport evaluate_texts(const std::vector<LabeledRecord>& records,
                              const std::vector<std::string>& texts,
                              const EvaluateOptions& options);

nlohmann::json to_json(const AccuracyReport& report, bool include_timing = true);

/// Aligned plain-text table: one row per variant, columns for delimiter,
/// quote, escape and overall accuracy (percent) and failures, split into
/// all / standard / messy sections.
std::string to_table(const std::vector<AccuracyReport>& reports);

// ---------------------------------------------------------------------------
// Synthetic corpus generation
// ---------------------------------------------------------------------------

/// Per-file probability of each mess feature.
struct MessRates {
  double comments = 0.0;
  double multiline = 0.0;
  double nested_quotes = 0.0;
  double ragged = 0.0;
  double empty_cells = 0.0;
  double unquoted_quotes = 0.0;

  static MessRates none() { return {}; }
  static MessRates moderate() { return {0.1, 0.1, 0.1, 0.1, 0.15, 0.1}; }

  bool any() const;
};

struct GeneratorSpec {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::vector<char32_t> delimiters{U',', U';', U'\t', U'|', U':', U'^', U' ', U'#', U'&', U'*'};
  std::vector<DialectChar> quotes{std::nullopt, U'"', U'\'', U'~'};
  std::vector<char32_t> escapes{U'\\'};
  double escape_probability = 0.2;
  MessRates mess = MessRates::moderate();
  /// Fraction of data cells replaced by content of no known type.
  double junk_fraction = 0.03;
  std::size_t min_rows = 8;
  std::size_t max_rows = 80;
  std::size_t min_columns = 2;
  std::size_t max_columns = 8;

  /// Throws std::invalid_argument on empty pools or inverted ranges.
  void validate() const;
  nlohmann::json to_json() const;
};

struct GeneratedFile {
  std::string name;
  std::string text;
  Dialect dialect;
  std::vector<std::string> features;
};

/// Deterministic in (spec): identical specs give byte-identical files.
std::vector<GeneratedFile> generate_corpus(const GeneratorSpec& spec);

/// Writes the corpus and `labels.jsonl` into `out_dir` (created if needed).
/// On I/O failure the files written so far are removed and Error is thrown.
std::vector<LabeledRecord> generate(const GeneratorSpec& spec, const std::filesystem::path& out_dir);

constexpr std::string_view kLabelsFileName = "labels.jsonl";

// ---------------------------------------------------------------------------
// Automatic ground truth
// ---------------------------------------------------------------------------

/// Strict acceptance tests for automatic labelling; each can be disabled.
struct StrictTests {
  bool min_two_rows = true;
  bool min_two_columns = true;
  bool constant_width = true;
  bool no_empty_cells = true;
  bool no_nested_quotes = true;
  bool no_multiline_cells = true;
  /// No cell contains any allowed quote character.
  bool no_stray_quotes = true;
  /// Every cell has a known data type.
  bool known_types = true;
  /// No parser diagnostics.
  bool clean_parse = true;
};

/// The unique candidate dialect under which `text` passes every enabled
/// strict test, or nothing if zero or several pass.
std::optional<Dialect> auto_ground_truth(std::string_view text, const StrictTests& tests = {},
                                         const CharacterPolicy& policy = CharacterPolicy::defaults());

}  // namespace csvdialect
