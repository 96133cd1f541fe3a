// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "csvdialect/detector.hpp"
#include "csvdialect/evalgen.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/scoring.hpp"
#include "csvdialect/typeinfer.hpp"
#include "support.hpp"

using namespace csvdialect;
using csvdialect::testing::exhaustive_detect;
using csvdialect::testing::make;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) {
        detail << what;
      }
      ok = false;
    }
  }
};

int failures = 0;

void report(int n, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double s = seconds_since(start);
  std::printf("%s criterion %d: %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", n, name.c_str(), s,
              c.ok ? "" : " -- ", c.detail.str().c_str());
  std::fflush(stdout);
  failures += c.ok ? 0 : 1;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-12; }

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<GeneratedFile> criterion_corpus() {
  GeneratorSpec spec;
  spec.seed = 2024;
  spec.count = 500;
  spec.mess = MessRates::moderate();
  return generate_corpus(spec);
}

std::vector<LabeledRecord> records_of(const std::vector<GeneratedFile>& files) {
  std::vector<LabeledRecord> out;
  for (const auto& f : files) {
    LabeledRecord r;
    r.path = f.name;
    r.dialect = f.dialect;
    r.standard = is_standard(f.dialect);
    r.features = f.features;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> texts_of(const std::vector<GeneratedFile>& files) {
  std::vector<std::string> out;
  for (const auto& f : files) {
    out.push_back(f.text);
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double time_detect(const std::string& text, int reps) {
  std::vector<double> t;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    const auto out = detect(text);
    t.push_back(seconds_since(start));
    if (out.candidates.size() == 0) {
      std::abort();
    }
  }
  return median(t);
}

}  // namespace

int main() {
  report(1, "pattern score hand values", [](Check& c) {
    const auto start = Clock::now();
    c.expect(near(pattern_score(RowPatternTable{{{"CDC", 3}}}), 1.5), "CDC x3");
    c.expect(near(pattern_score(RowPatternTable{{{"C", 5}}}), 0.005), "C x5");
    c.expect(near(pattern_score(RowPatternTable{{{"CDCDC", 4}, {"CDC", 1}}}), (4.0 * 2.0 / 3.0 + 0.5) / 2.0),
             "CDCDC x4 + CDC");
    c.expect(seconds_since(start) < 1.0, "runtime");
  });

  report(2, "type score clamp", [](Check& c) {
    const auto s = consistency("??~\n<>", make(""));
    c.expect(s.type_raw == 0.0, "raw type score not zero");
    c.expect(s.type_clamped == 1e-10, "clamped type score not 1e-10");
    c.expect(type_score(CellTable{{{"??~"}}}).clamped == 1e-10, "cell table clamp");
  });

  report(3, "pruned detection equals exhaustive scoring on 200 files", [](Check& c) {
    const auto start = Clock::now();
    GeneratorSpec spec;
    spec.seed = 99;
    spec.count = 200;
    std::size_t mismatches = 0;
    for (const auto& f : generate_corpus(spec)) {
      const auto pruned = detect(f.text);
      const auto oracle = exhaustive_detect(f.text);
      bool same = pruned.dialect == oracle.winner;
      if (!oracle.winner) {
        same = same && pruned.tie_set == oracle.best;
      }
      mismatches += same ? 0 : 1;
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    c.expect(seconds_since(start) < 120.0, "runtime");
  });

  report(4, "parser round trip on 1000 random tables", [](Check& c) {
    csvdialect::testing::TableFuzzer fuzz(4242);
    std::size_t bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto d = fuzz.dialect();
      const auto t = fuzz.table(d);
      FormatOptions opts;
      opts.quoting = d.quote_char && fuzz.below(2) ? FormatOptions::Quoting::All : FormatOptions::Quoting::Minimal;
      opts.line_terminator = fuzz.below(2) ? "\n" : "\r\n";
      // Without a quote character a final lone empty cell needs the terminator.
      opts.trailing_newline = fuzz.below(2) == 0 || (!d.quote_char && t.rows.back() == Row{""});
      bad += parse(format(t, d, opts), d) == t ? 0 : 1;
    }
    c.expect(bad == 0, std::to_string(bad) + " failures");
  });

  report(5, "data type golden suite", [](Check& c) {
    const std::vector<std::pair<std::string, DataType>> golden{
        {"", DataType::Empty},           {"1,234.56", DataType::NumberGrouped},
        {"123e10", DataType::NumberPlain}, {"16:45", DataType::Time},
        {"3 degrees", DataType::Alphanumeric}, {"NW1 2DB", DataType::Alphanumeric},
        {"n/a", DataType::NA},           {"2021-03-04T16:45", DataType::DateTime},
        {"€12.50", DataType::Currency},  {"nan", DataType::Alphanumeric}};
    for (const auto& [cell, type] : golden) {
      const auto got = detect_type(cell);
      c.expect(got == type, "'" + cell + "' -> " + std::string(to_string(got)));
    }
    c.expect(is_known_type(""), "empty not known");
  });

  report(6, "synthetic corpus accuracy", [](Check& c) {
    const auto start = Clock::now();
    const auto corpus = criterion_corpus();
    std::set<DialectChar> delims;
    std::set<DialectChar> quotes;
    std::set<bool> escapes;
    for (const auto& f : corpus) {
      delims.insert(f.dialect.delimiter);
      quotes.insert(f.dialect.quote_char);
      escapes.insert(f.dialect.escape_char.has_value());
    }
    c.expect(delims.size() >= 8, "only " + std::to_string(delims.size()) + " delimiters");
    c.expect(quotes == std::set<DialectChar>{std::nullopt, U'"', U'\'', U'~'}, "quote coverage");
    c.expect(escapes.size() == 2, "escape coverage");

    const auto records = records_of(corpus);
    const auto texts = texts_of(corpus);
    auto run = [&](DetectorVariant v) {
      EvaluateOptions eo;
      eo.detector.variant = v;
      eo.jobs = jobs();
      return evaluate_texts(records, texts, eo);
    };
    const auto full = run(DetectorVariant::Full);
    const auto pattern = run(DetectorVariant::PatternOnly);
    const auto type = run(DetectorVariant::TypeOnly);
    const auto no_tie = run(DetectorVariant::NoTieBreak);

    std::size_t clean = 0;
    std::size_t clean_ok = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].features.empty()) {
        ++clean;
        clean_ok += full.files[i].overall_ok ? 1 : 0;
      }
    }
    const double full_pct = Tally::percent(full.all.overall, full.all.files);
    const double clean_pct = Tally::percent(clean_ok, clean);
    std::printf("  full %.2f%% (%zu/%zu), mess-free %.2f%% (%zu/%zu), pattern %.2f%%, type %.2f%%, "
                "failures full %zu no-tie %zu\n",
                full_pct, full.all.overall, full.all.files, clean_pct, clean_ok, clean,
                Tally::percent(pattern.all.overall, pattern.all.files),
                Tally::percent(type.all.overall, type.all.files), full.all.failures, no_tie.all.failures);
    c.expect(full_pct >= 95.0, "full accuracy below 95%");
    c.expect(clean > 0 && clean_pct >= 99.0, "mess-free accuracy below 99%");
    c.expect(full.all.overall >= pattern.all.overall, "full below pattern-only");
    c.expect(full.all.overall >= type.all.overall, "full below type-only");
    c.expect(no_tie.all.failures >= full.all.failures, "no-tie has fewer failures than full");
    c.expect(seconds_since(start) < 600.0, "runtime");
  });

  report(7, "quote masking and caret/tilde detection", [](Check& c) {
    const std::string quoted = "\"a,b\"\n\"c,d\"";
    c.expect(masked_by_quote(quoted, make(",", "\"")), "not masked");
    c.expect(!get_dialects(quoted).contains(make(",", "\"")), "masked dialect still a candidate");
    const auto out = detect("a^b^c\n1^2^3\n~x^y~^z^w");
    c.expect(out.dialect == make("^", "~"), "caret/tilde file misdetected");
  });

  report(8, "detection time and scaling", [](Check& c) {
    GeneratorSpec spec;
    spec.seed = 2024;
    spec.count = 500;
    const auto corpus = generate_corpus(spec);
    double total = 0.0;
    for (const auto& f : corpus) {
      const auto start = Clock::now();
      detect(f.text);
      total += seconds_since(start);
    }
    const double mean = total / static_cast<double>(corpus.size());
    c.expect(mean < 1.0, "mean detection time " + std::to_string(mean) + "s");

    // Repeating a file keeps its character set, so the candidate set is fixed.
    std::vector<double> ratios;
    for (std::size_t i = 0; i < 25; ++i) {
      std::string base = corpus[i].text;
      if (base.empty() || (base.back() != '\n' && base.back() != '\r')) {
        base += corpus[i].text.find("\r\n") != std::string::npos ? "\r\n" : "\n";
      }
      std::string small = base;
      while (small.size() < 16 * 1024) {
        small += base;
      }
      const auto n = detect(small).candidates.size();
      const std::string large = small + small;
      if (detect(large).candidates.size() != n) {
        continue;
      }
      ratios.push_back(time_detect(large, 5) / time_detect(small, 5));
    }
    const double r = median(ratios);
    std::printf("  mean %.2f ms per file, median doubling ratio %.2f over %zu files\n", mean * 1e3, r, ratios.size());
    c.expect(!ratios.empty() && r <= 2.5, "doubling ratio " + std::to_string(r));
  });

  report(9, "deterministic output", [](Check& c) {
    GeneratorSpec spec;
    spec.seed = 77;
    spec.count = 120;
    const auto corpus = generate_corpus(spec);
    std::vector<std::string> serial(corpus.size());
    std::vector<std::string> again(corpus.size());
    std::vector<std::string> parallel(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      serial[i] = to_json(detect(corpus[i].text), true).dump();
      again[i] = to_json(detect(corpus[i].text), true).dump();
    }
    {
      std::vector<std::jthread> workers;
      const std::size_t n = std::max<std::size_t>(2, jobs());
      for (std::size_t w = 0; w < n; ++w) {
        workers.emplace_back([&, w] {
          for (std::size_t i = w; i < corpus.size(); i += n) {
            parallel[i] = to_json(detect(corpus[i].text), true).dump();
          }
        });
      }
    }
    c.expect(serial == again, "repeated detect differs");
    c.expect(serial == parallel, "parallel detect differs");

    const auto records = records_of(corpus);
    const auto texts = texts_of(corpus);
    EvaluateOptions one;
    EvaluateOptions many;
    many.jobs = std::max<std::size_t>(2, jobs());
    const auto a = to_json(evaluate_texts(records, texts, one), false).dump();
    const auto b = to_json(evaluate_texts(records, texts, one), false).dump();
    const auto p = to_json(evaluate_texts(records, texts, many), false).dump();
    c.expect(a == b, "repeated evaluate differs");
    c.expect(a == p, "parallel evaluate differs");
  });

  return failures == 0 ? 0 : 1;
}
