#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "csvdialect/encoding.hpp"
#include "csvdialect/evalgen.hpp"

namespace csvdialect {

namespace {

void run_parallel(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& task) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        task(i);
      }
    });
  }
}

FileResult score_file(const LabeledRecord& record, std::string_view text,
                      const DetectorOptions& options) {
  FileResult r;
  r.path = record.path.generic_string();
  r.truth = record.dialect;
  r.origin = record.origin;
  r.standard = record.standard;

  const auto start = std::chrono::steady_clock::now();
  const auto outcome = detect(text, options);
  const auto stop = std::chrono::steady_clock::now();
  r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();

  r.status = std::string(to_string(outcome.status));
  if (outcome.dialect) {
    r.detected = outcome.dialect;
    r.delimiter_ok = outcome.dialect->delimiter == record.dialect.delimiter;
    r.quote_ok = outcome.dialect->quote_char == record.dialect.quote_char;
    r.escape_ok = outcome.dialect->escape_char == record.dialect.escape_char;
    r.overall_ok = r.delimiter_ok && r.quote_ok && r.escape_ok;
  }
  return r;
}

AccuracyReport aggregate(std::vector<FileResult> files, DetectorVariant variant) {
  AccuracyReport report;
  report.variant = std::string(to_string(variant));
  for (const auto& r : files) {
    report.all.add(r);
    (r.standard ? report.standard : report.messy).add(r);
    report.by_origin[r.origin].add(r);
  }
  report.files = std::move(files);
  return report;
}

std::string pct(std::size_t count, std::size_t files) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", Tally::percent(count, files));
  return buf;
}

}  // namespace

void Tally::add(const FileResult& r) {
  ++files;
  delimiter += r.delimiter_ok;
  quote += r.quote_ok;
  escape += r.escape_ok;
  overall += r.overall_ok;
  failures += !r.detected.has_value();
}

double Tally::percent(std::size_t count, std::size_t files) {
  return files == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(files);
}

nlohmann::json Tally::to_json() const {
  nlohmann::ordered_json j;
  j["files"] = files;
  j["delimiter"] = percent(delimiter, files);
  j["quotechar"] = percent(quote, files);
  j["escapechar"] = percent(escape, files);
  j["overall"] = percent(overall, files);
  j["failures"] = failures;
  j["counts"] = {{"delimiter", delimiter}, {"quotechar", quote}, {"escapechar", escape},
                 {"overall", overall}};
  return j;
}

double AccuracyReport::failure_rate() const { return Tally::percent(all.failures, all.files); }

AccuracyReport evaluate_texts(const std::vector<LabeledRecord>& records,
                              const std::vector<std::string>& texts,
                              const EvaluateOptions& options) {
  std::vector<FileResult> results(records.size());
  run_parallel(records.size(), options.jobs, [&](std::size_t i) {
    results[i] = score_file(records[i], texts.at(i), options.detector);
  });
  return aggregate(std::move(results), options.detector.variant);
}

AccuracyReport evaluate(const std::vector<LabeledRecord>& corpus, const EvaluateOptions& options) {
  std::vector<FileResult> results(corpus.size());
  run_parallel(corpus.size(), options.jobs, [&](std::size_t i) {
    const auto& record = corpus[i];
    try {
      const auto decoded = read_text_file(record.path, options.encoding, options.latin1_fallback);
      results[i] = score_file(record, decoded.text, options.detector);
    } catch (const std::exception& e) {
      FileResult r;
      r.path = record.path.generic_string();
      r.truth = record.dialect;
      r.origin = record.origin;
      r.standard = record.standard;
      r.status = "error";
      r.error = e.what();
      results[i] = std::move(r);
    }
  });
  return aggregate(std::move(results), options.detector.variant);
}

nlohmann::json to_json(const AccuracyReport& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["variant"] = report.variant;
  j["all"] = report.all.to_json();
  j["standard"] = report.standard.to_json();
  j["messy"] = report.messy.to_json();
  nlohmann::ordered_json origins;
  for (const auto& [origin, tally] : report.by_origin) {
    origins[std::string(to_string(origin))] = tally.to_json();
  }
  j["by_origin"] = origins;
  j["failure_rate"] = report.failure_rate();

  auto files = nlohmann::ordered_json::array();
  for (const auto& r : report.files) {
    nlohmann::ordered_json f;
    f["file"] = r.path;
    f["status"] = r.status;
    f["truth"] = to_json(r.truth);
    f["detected"] = r.detected ? nlohmann::json(to_json(*r.detected)) : nlohmann::json(nullptr);
    f["correct"] = r.overall_ok;
    if (!r.error.empty()) {
      f["error"] = r.error;
    }
    if (include_timing) {
      f["runtime_ms"] = r.runtime_ms;
    }
    files.push_back(std::move(f));
  }
  j["files"] = std::move(files);
  return j;
}

std::string to_table(const std::vector<AccuracyReport>& reports) {
  std::size_t name_width = 7;  // "Variant"
  for (const auto& r : reports) {
    name_width = std::max(name_width, r.variant.size());
  }
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };
  auto section = [&](const char* title, const Tally AccuracyReport::*member) {
    const std::size_t files = reports.empty() ? 0 : (reports.front().*member).files;
    out << title << " (" << files << " files)\n";
    out << pad("Variant", name_width) << "  Delimiter  Quotechar  Escapechar  Overall  Failures\n";
    for (const auto& r : reports) {
      const Tally& t = r.*member;
      char line[160];
      std::snprintf(line, sizeof(line), "  %9s  %9s  %10s  %7s  %8zu\n", pct(t.delimiter, t.files).c_str(),
                    pct(t.quote, t.files).c_str(), pct(t.escape, t.files).c_str(),
                    pct(t.overall, t.files).c_str(), t.failures);
      out << pad(r.variant, name_width) << line;
    }
  };
  section("All files", &AccuracyReport::all);
  out << "\n";
  section("Standard files", &AccuracyReport::standard);
  out << "\n";
  section("Messy files", &AccuracyReport::messy);
  return out.str();
}

}  // namespace csvdialect
