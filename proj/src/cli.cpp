#include "csvdialect/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csvdialect/detector.hpp"
#include "csvdialect/encoding.hpp"
#include "csvdialect/error.hpp"
#include "csvdialect/evalgen.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/typeinfer.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string variant = "full";
  double alpha = ScoreConstants{}.alpha;
  double beta = ScoreConstants{}.beta;
  std::string encoding = "utf-8";
  bool latin1_fallback = false;
  bool verbose = false;
  bool no_timing = false;
  std::string output = "json";
  std::string policy_file;
  std::size_t jobs = 1;
};

struct ParseOverrides {
  std::optional<std::string> delimiter;
  std::optional<std::string> quotechar;
  std::optional<std::string> escapechar;
  bool any() const { return delimiter || quotechar || escapechar; }
};

struct GenerateOptions {
  GeneratorSpec spec;
  std::string out_dir;
  bool no_mess = false;
  std::string delimiters;
  std::string quotes;
};

// Accepts a literal character or one of the names tab, space, comma, none.
DialectChar char_option(const std::string& value) {
  if (value == "comma") {
    return U',';
  }
  if (value == "tab" || value == "\\t") {
    return U'\t';
  }
  if (value == "space") {
    return U' ';
  }
  if (value == "none") {
    return std::nullopt;
  }
  return dialect_char_from_string(value);
}

std::vector<DialectChar> char_list(const std::string& value) {
  std::vector<DialectChar> out;
  std::stringstream in(value);
  std::string token;
  while (std::getline(in, token, ',')) {
    out.push_back(char_option(token));
  }
  return out;
}

DetectorOptions detector_options(const CommonOptions& common, std::string_view variant_name) {
  DetectorOptions opts;
  const auto variant = variant_from_string(variant_name);
  if (!variant) {
    throw CLI::ValidationError("--variant", "unknown variant '" + std::string(variant_name) + "'");
  }
  opts.variant = *variant;
  opts.constants = {common.alpha, common.beta};
  try {
    opts.constants.validate();
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--alpha/--beta", e.what());
  }
  if (!common.policy_file.empty()) {
    const auto bytes = read_file_bytes(common.policy_file);
    try {
      opts.policy = CharacterPolicy::from_json(nlohmann::json::parse(bytes));
    } catch (const std::exception& e) {
      throw Error(common.policy_file + ": " + e.what());
    }
  }
  return opts;
}

void check_output(const CommonOptions& common, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), common.output) == allowed.end()) {
    throw CLI::ValidationError("--output", "'" + common.output + "' is not supported by this command");
  }
}

template <typename Task>
void for_each_parallel(std::size_t count, std::size_t jobs, Task task) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      task(i);
    }
  };
  if (jobs == 1) {
    work();
    return;
  }
  std::vector<std::jthread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back(work);
  }
}

std::string display_char(const DialectChar& c) {
  if (!c) {
    return "none";
  }
  if (*c == U'\t') {
    return "tab";
  }
  if (*c == U' ') {
    return "space";
  }
  return to_utf8(*c);
}

int cmd_detect(const std::vector<std::string>& files, const CommonOptions& common,
               std::ostream& out, std::ostream& err) {
  check_output(common, {"json", "table"});
  const auto opts = detector_options(common, common.variant);

  struct Result {
    std::string line;
    std::string error;
    int code = kExitOk;
  };
  std::vector<Result> results(files.size());
  for_each_parallel(files.size(), common.jobs, [&](std::size_t i) {
    Result& r = results[i];
    try {
      const auto decoded = read_text_file(files[i], common.encoding, common.latin1_fallback);
      const auto start = std::chrono::steady_clock::now();
      const auto outcome = detect(decoded.text, opts);
      const auto stop = std::chrono::steady_clock::now();
      r.code = outcome.status == DetectionStatus::Detected ? kExitOk : kExitUndetected;
      if (common.output == "table") {
        const auto& d = outcome.dialect;
        r.line = files[i] + "\t" + (d ? display_char(d->delimiter) : "-") + "\t" +
                 (d ? display_char(d->quote_char) : "-") + "\t" +
                 (d ? display_char(d->escape_char) : "-") + "\t" +
                 std::string(to_string(outcome.status));
        return;
      }
      nlohmann::ordered_json j;
      j["file"] = files[i];
      const auto body = to_json(outcome, common.verbose);
      j["status"] = body["status"];
      j["dialect"] = body["dialect"];
      if (!outcome.tie_set.empty()) {
        j["ties"] = body["ties"];
      }
      if (!common.no_timing) {
        j["runtime_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
      }
      if (common.verbose) {
        j["encoding"] = decoded.encoding;
        j["candidates"] = outcome.candidates.size();
        j["scores"] = body["scores"];
        j["pruned"] = body["pruned"];
      }
      r.line = j.dump();
    } catch (const std::exception& e) {
      r.code = kExitError;
      r.error = files[i] + ": " + e.what();
    }
  });

  if (common.output == "table") {
    out << "file\tdelimiter\tquotechar\tescapechar\tstatus\n";
  }
  int code = kExitOk;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      err << "csvdialect: " << r.error << '\n';
    } else {
      out << r.line << '\n';
    }
    code = std::max(code, r.code);
  }
  return code;
}

int cmd_parse(const std::string& file, const ParseOverrides& overrides, const CommonOptions& common,
              std::ostream& out, std::ostream& err) {
  check_output(common, {"json", "csv"});
  Dialect dialect;
  if (overrides.any()) {
    try {
      dialect = {char_option(overrides.delimiter.value_or("none")),
                 char_option(overrides.quotechar.value_or("none")),
                 char_option(overrides.escapechar.value_or("none"))};
    } catch (const std::exception& e) {
      throw CLI::ValidationError("--delimiter/--quotechar/--escapechar", e.what());
    }
    if (!dialect.is_valid()) {
      throw CLI::ValidationError("--delimiter/--quotechar/--escapechar",
                                 "dialect characters must be distinct");
    }
  }
  const auto opts = detector_options(common, common.variant);
  const auto decoded = read_text_file(file, common.encoding, common.latin1_fallback);

  if (!overrides.any()) {
    const auto outcome = detect(decoded.text, opts);
    if (!outcome.dialect) {
      err << "csvdialect: " << file << ": no dialect detected (" << to_string(outcome.status) << ")\n";
      return kExitUndetected;
    }
    dialect = *outcome.dialect;
  }
  if (common.verbose) {
    err << "csvdialect: " << file << ": dialect " << to_json(dialect).dump() << '\n';
  }
  const auto table = parse(decoded.text, dialect);
  if (common.output == "csv") {
    FormatOptions fo;
    fo.line_terminator = "\r\n";
    fo.trailing_newline = true;
    out << format(table, Dialect{U',', U'"', std::nullopt}, fo);
    return kExitOk;
  }
  nlohmann::ordered_json j;
  j["file"] = file;
  j["dialect"] = to_json(dialect);
  j["rows"] = table.rows;
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_evaluate(const std::string& corpus, std::string labels, std::vector<std::string> variants,
                 const CommonOptions& common, std::ostream& out) {
  check_output(common, {"json", "table"});
  if (variants.empty()) {
    variants.push_back(common.variant);
  }
  std::vector<EvaluateOptions> runs;
  for (const auto& v : variants) {
    EvaluateOptions eo;
    eo.detector = detector_options(common, v);
    eo.encoding = common.encoding;
    eo.latin1_fallback = common.latin1_fallback;
    eo.jobs = common.jobs;
    runs.push_back(std::move(eo));
  }
  if (labels.empty()) {
    labels = (fs::path(corpus) / kLabelsFileName).string();
  }
  const auto records = read_labels(labels, corpus);

  std::vector<AccuracyReport> reports;
  for (const auto& eo : runs) {
    reports.push_back(evaluate(records, eo));
    if (common.output == "json") {
      auto j = to_json(reports.back(), !common.no_timing);
      if (!common.verbose) {
        j.erase("files");
      }
      out << j.dump() << '\n';
    }
  }
  if (common.output == "table") {
    out << to_table(reports);
  }
  return kExitOk;
}

int cmd_generate(GenerateOptions g, std::ostream& out) {
  if (g.no_mess) {
    g.spec.mess = MessRates::none();
  }
  try {
    if (!g.delimiters.empty()) {
      g.spec.delimiters.clear();
      for (const auto& c : char_list(g.delimiters)) {
        if (!c) {
          throw std::invalid_argument("a delimiter cannot be 'none'");
        }
        g.spec.delimiters.push_back(*c);
      }
    }
    if (!g.quotes.empty()) {
      g.spec.quotes = char_list(g.quotes);
    }
    g.spec.validate();
  } catch (const std::exception& e) {
    throw CLI::ValidationError("generate", e.what());
  }
  const auto records = generate(g.spec, g.out_dir);
  nlohmann::ordered_json j;
  j["out"] = g.out_dir;
  j["files"] = records.size();
  j["labels"] = (fs::path(g.out_dir) / kLabelsFileName).string();
  j["spec"] = g.spec.to_json();
  out << j.dump() << '\n';
  return kExitOk;
}

int cmd_dump_types(std::ostream& out) {
  auto j = TypeRegistry::standard().dump();
  j["unicode_version"] = unicode_version();
  out << j.dump() << '\n';
  return kExitOk;
}

void add_common(CLI::App& app, CommonOptions& common, bool with_variant = true) {
  if (with_variant) {
    app.add_option("--variant", common.variant, "Detector: full, pattern, type, no-tie, wrangler")
        ->check(CLI::IsMember({"full", "pattern", "type", "no-tie", "wrangler"}));
  }
  app.add_option("--alpha", common.alpha, "Pattern score floor for one-cell rows");
  app.add_option("--beta", common.beta, "Lower clamp of the type score");
  app.add_option("--encoding", common.encoding, "Declared input encoding (default utf-8)");
  app.add_flag("--latin-1-fallback", common.latin1_fallback, "Retry as ISO-8859-1 if decoding fails");
  app.add_flag("-v,--verbose", common.verbose, "Include per-candidate scores and details");
  app.add_flag("--no-timing", common.no_timing, "Omit runtimes from JSON output");
  app.add_option("--policy", common.policy_file, "JSON character policy file");
  app.add_option("-j,--jobs", common.jobs, "Worker threads")->check(CLI::Range(1, 256));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detect the dialect of CSV files and parse them.", "csvdialect"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "csvdialect 1.0.0");

  CommonOptions common;
  ParseOverrides overrides;
  GenerateOptions gen;
  std::vector<std::string> files;
  std::string parse_file;
  std::string corpus;
  std::string labels;
  std::vector<std::string> eval_variants;

  auto* detect_cmd = app.add_subcommand("detect", "Detect the dialect of each file");
  add_common(*detect_cmd, common);
  detect_cmd->add_option("--output", common.output, "Output format: json or table");
  detect_cmd->add_option("files", files, "Input files")->required();

  auto* parse_cmd = app.add_subcommand("parse", "Parse a file under its detected or given dialect");
  add_common(*parse_cmd, common);
  parse_cmd->add_option("--output", common.output, "Output format: json or csv");
  parse_cmd->add_option("--delimiter", overrides.delimiter, "Delimiter (character, tab, space, none)");
  parse_cmd->add_option("--quotechar", overrides.quotechar, "Quote character (or none)");
  parse_cmd->add_option("--escapechar", overrides.escapechar, "Escape character (or none)");
  parse_cmd->add_option("file", parse_file, "Input file")->required();

  auto* eval_cmd = app.add_subcommand("evaluate", "Measure detection accuracy on a labeled corpus");
  add_common(*eval_cmd, common, false);
  eval_cmd->add_option("--variant", eval_variants, "Detector variant; repeat to compare")
      ->check(CLI::IsMember({"full", "pattern", "type", "no-tie", "wrangler"}));
  eval_cmd->add_option("--output", common.output, "Output format: json or table");
  eval_cmd->add_option("--corpus", corpus, "Corpus directory")->required();
  eval_cmd->add_option("--labels", labels, "Labels file (default CORPUS/labels.jsonl)");

  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic labeled corpus");
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");
  gen_cmd->add_option("--count", gen.spec.count, "Number of files");
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--delimiters", gen.delimiters, "Comma-separated delimiter pool (use comma, tab, space by name)");
  gen_cmd->add_option("--quotes", gen.quotes, "Comma-separated quote pool (none for no quote)");
  gen_cmd->add_option("--escape-probability", gen.spec.escape_probability, "Chance a file uses an escape");
  gen_cmd->add_option("--junk-fraction", gen.spec.junk_fraction, "Fraction of untyped cells");
  gen_cmd->add_flag("--no-mess", gen.no_mess, "Disable every mess feature");
  gen_cmd->add_option("--comments", gen.spec.mess.comments, "Chance of comment lines");
  gen_cmd->add_option("--multiline", gen.spec.mess.multiline, "Chance of multi-line cells");
  gen_cmd->add_option("--nested-quotes", gen.spec.mess.nested_quotes, "Chance of nested quotes");
  gen_cmd->add_option("--ragged", gen.spec.mess.ragged, "Chance of ragged rows");
  gen_cmd->add_option("--empty-cells", gen.spec.mess.empty_cells, "Chance of empty cells");
  gen_cmd->add_option("--unquoted-quotes", gen.spec.mess.unquoted_quotes, "Chance of stray quote characters");
  gen_cmd->add_option("--min-rows", gen.spec.min_rows, "Minimum data rows");
  gen_cmd->add_option("--max-rows", gen.spec.max_rows, "Maximum data rows");
  gen_cmd->add_option("--min-columns", gen.spec.min_columns, "Minimum columns");
  gen_cmd->add_option("--max-columns", gen.spec.max_columns, "Maximum columns");

  app.add_subcommand("dump-types", "Print the data type registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*detect_cmd) {
      return cmd_detect(files, common, out, err);
    }
    if (*parse_cmd) {
      return cmd_parse(parse_file, overrides, common, out, err);
    }
    if (*eval_cmd) {
      return cmd_evaluate(corpus, labels, eval_variants, common, out);
    }
    if (*gen_cmd) {
      return cmd_generate(gen, out);
    }
    return cmd_dump_types(out);
  } catch (const CLI::Error& e) {
    err << "csvdialect: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "csvdialect: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace csvdialect
