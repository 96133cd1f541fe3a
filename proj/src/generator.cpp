#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "csvdialect/error.hpp"
#include "csvdialect/evalgen.hpp"
#include "csvdialect/parser.hpp"
#include "csvdialect/unicode.hpp"

namespace csvdialect {

namespace {

constexpr std::array kWords{"alpha", "bravo", "charlie", "delta",  "echo",   "foxtrot", "golf",
                            "hotel", "india", "juliet",  "kilo",   "lima",   "mike",    "november",
                            "oscar", "papa",  "quebec",  "romeo",  "sierra", "tango",   "uniform",
                            "victor", "whiskey", "xray", "yankee", "zulu",   "Amsterdam", "Berlin",
                            "Cairo", "Denver", "Lisbon", "Oslo",   "Paris",  "Quito",   "Seoul"};
constexpr std::array kDomains{"example.com", "mail.org", "data.net", "uni.edu"};
constexpr std::array kCurrency{"$", "€", "£", "¥"};
constexpr std::array kJunk{"<x/>", "a_b=c", "{k}", "[1]x", "?!", "x=y=z", "[n/a]", "_tmp_"};
constexpr std::array kOtherQuotes{U'"', U'\'', U'~', U'`'};

enum class Family {
  Integer, Decimal, Grouped, Percent, Currency, Date, Time, DateTime,
  Email, Url, Word, Phrase, Code, Boolean,
};
constexpr std::array kFamilies{Family::Integer, Family::Decimal, Family::Grouped, Family::Percent,
                               Family::Currency, Family::Date,    Family::Time,    Family::DateTime,
                               Family::Email,    Family::Url,     Family::Word,    Family::Phrase,
                               Family::Code,     Family::Boolean};

bool is_text(Family f) {
  return f == Family::Email || f == Family::Url || f == Family::Word || f == Family::Phrase ||
         f == Family::Code || f == Family::Boolean;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine output is portable; std distributions are not, so sampling is done here.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index) : engine_(splitmix64(seed ^ splitmix64(index))) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename C>
  const auto& pick(const C& c) {
    return c[below(c.size())];
  }

 private:
  std::mt19937_64 engine_;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

std::string grouped(Rng& rng, char sep) {
  std::string digits = std::to_string(rng.between(1000, 9999999));
  std::string out;
  const std::size_t lead = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
  out = digits.substr(0, lead);
  for (std::size_t i = lead; i < digits.size(); i += 3) {
    out += sep;
    out += digits.substr(i, 3);
  }
  return out;
}

std::string date(Rng& rng, int style) {
  const int y = static_cast<int>(rng.between(1970, 2030));
  const int m = static_cast<int>(rng.between(1, 12));
  const int d = static_cast<int>(rng.between(1, 28));
  switch (style) {
    case 0: return fmt("%04d-%02d-%02d", y, m, d);
    case 1: return fmt("%02d.%02d.%04d", d, m, y);
    case 2: return fmt("%d-%d-%02d", m, d, y % 100);
    default: return fmt("%04d %02d %02d", y, m, d);
  }
}

std::string time_of_day(Rng& rng, bool seconds) {
  const int h = static_cast<int>(rng.between(0, 23));
  const int m = static_cast<int>(rng.between(0, 59));
  return seconds ? fmt("%02d:%02d:%02d", h, m, static_cast<int>(rng.between(0, 59)))
                 : fmt("%02d:%02d", h, m);
}

struct Column {
  Family family;
  int style;  // family-specific variation, fixed per column
};

struct FileContext {
  Dialect dialect;
  bool decimal_comma = false;
};

std::string cell_value(Rng& rng, const Column& col, const FileContext& ctx) {
  switch (col.family) {
    case Family::Integer: return std::to_string(rng.between(-500, 99999));
    case Family::Decimal: {
      auto s = fmt("%lld.%02lld", static_cast<long long>(rng.between(0, 9999)),
                   static_cast<long long>(rng.between(0, 99)));
      if (ctx.decimal_comma) {
        std::replace(s.begin(), s.end(), '.', ',');
      }
      return s;
    }
    case Family::Grouped: return grouped(rng, col.style == 0 ? ',' : '.');
    case Family::Percent:
      return fmt("%lld.%lld%%", static_cast<long long>(rng.between(0, 99)),
                 static_cast<long long>(rng.between(0, 9)));
    case Family::Currency:
      return std::string(kCurrency[static_cast<std::size_t>(col.style) % kCurrency.size()]) +
             fmt("%lld.%02lld", static_cast<long long>(rng.between(1, 999)),
                 static_cast<long long>(rng.between(0, 99)));
    case Family::Date: return date(rng, col.style % 4);
    case Family::Time: return time_of_day(rng, col.style % 2 == 1);
    case Family::DateTime: return date(rng, 0) + (col.style % 2 ? "T" : " ") + time_of_day(rng, true);
    case Family::Email:
      return std::string(rng.pick(kWords)) + "." + std::to_string(rng.between(1, 99)) + "@" +
             rng.pick(kDomains);
    case Family::Url:
      return std::string("https://www.") + rng.pick(kDomains) + "/" + rng.pick(kWords);
    case Family::Word: return rng.pick(kWords);
    case Family::Phrase:
      return std::string(rng.pick(kWords)) + " " + rng.pick(kWords) +
             (rng.chance(0.3) ? std::string(" ") + rng.pick(kWords) : std::string());
    case Family::Code:
      return fmt("%c%c%lld", 'A' + static_cast<int>(rng.below(26)), 'A' + static_cast<int>(rng.below(26)),
                 static_cast<long long>(rng.between(1, 999)));
    case Family::Boolean: return rng.chance(0.5) ? "true" : "false";
  }
  return "";
}

bool contains(std::string_view cell, const DialectChar& c) {
  if (!c) {
    return false;
  }
  for (std::size_t pos = 0; pos < cell.size();) {
    const auto cur = decode_utf8(cell, pos);
    if (cur.code_point == *c) {
      return true;
    }
    pos += cur.length;
  }
  return false;
}

// Content the dialect can carry without extra machinery. Data cells never
// contain the escape character or any known quote character.
bool plain_ok(std::string_view cell, const Dialect& d) {
  if (contains(cell, d.escape_char)) {
    return false;
  }
  for (char32_t q : kOtherQuotes) {
    if (contains(cell, q)) {
      return false;
    }
  }
  if (contains(cell, d.delimiter) || cell.find('\n') != std::string_view::npos) {
    return d.quote_char.has_value();
  }
  return true;
}

std::string sample_cell(Rng& rng, const Column& col, const FileContext& ctx) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto cell = cell_value(rng, col, ctx);
    if (plain_ok(cell, ctx.dialect)) {
      return cell;
    }
  }
  return std::to_string(rng.between(0, 999));
}

std::string comment_prefix(const Dialect& d) {
  for (const char* p : {"#", "//", "%"}) {
    if (!contains(p, d.delimiter)) {
      return p;
    }
  }
  return "--";
}

Dialect sample_dialect(Rng& rng, const GeneratorSpec& spec) {
  Dialect d;
  d.delimiter = rng.pick(spec.delimiters);
  std::vector<DialectChar> quotes;
  for (const auto& q : spec.quotes) {
    if (q != d.delimiter) {
      quotes.push_back(q);
    }
  }
  d.quote_char = quotes.empty() ? std::nullopt : rng.pick(quotes);
  if (rng.chance(spec.escape_probability)) {
    std::vector<char32_t> escapes;
    for (char32_t e : spec.escapes) {
      if (e != d.delimiter && e != d.quote_char) {
        escapes.push_back(e);
      }
    }
    if (!escapes.empty()) {
      d.escape_char = rng.pick(escapes);
    }
  }
  return d;
}

GeneratedFile generate_one(const GeneratorSpec& spec, std::size_t index) {
  Rng rng(spec.seed, index);
  GeneratedFile file;
  file.name = fmt("file_%04zu.csv", index);
  FileContext ctx;
  ctx.dialect = sample_dialect(rng, spec);
  const Dialect& d = ctx.dialect;
  ctx.decimal_comma = d.delimiter != U',' && rng.chance(0.25);
  const bool quoted = d.quote_char.has_value();
  const std::string delim = to_utf8(*d.delimiter);

  const auto width = static_cast<std::size_t>(rng.between(
      static_cast<std::int64_t>(spec.min_columns), static_cast<std::int64_t>(spec.max_columns)));
  const auto height = static_cast<std::size_t>(rng.between(
      static_cast<std::int64_t>(spec.min_rows), static_cast<std::int64_t>(spec.max_rows)));
  std::vector<Column> columns;
  for (std::size_t c = 0; c < width; ++c) {
    columns.push_back({rng.pick(kFamilies), static_cast<int>(rng.below(4))});
  }

  CellTable table;
  if (rng.chance(0.8)) {
    Row header;
    for (std::size_t c = 0; c < width; ++c) {
      header.push_back(std::string(rng.pick(kWords)) + (rng.chance(0.3) ? "_id" : ""));
    }
    table.rows.push_back(std::move(header));
  }
  const std::size_t first_data = table.rows.size();
  for (std::size_t r = 0; r < height; ++r) {
    Row row;
    for (const auto& col : columns) {
      std::string junk = rng.pick(kJunk);
      row.push_back(rng.chance(spec.junk_fraction) && plain_ok(junk, d) ? std::move(junk)
                                                                         : sample_cell(rng, col, ctx));
    }
    table.rows.push_back(std::move(row));
  }
  auto random_data_cell = [&]() -> std::string& {
    auto& row = table.rows[first_data + rng.below(height)];
    return row[rng.below(row.size())];
  };
  auto mess = [&](double rate, const char* name, bool applicable) {
    if (applicable && rng.chance(rate)) {
      file.features.emplace_back(name);
      return true;
    }
    return false;
  };

  // Cells that prove the quote and escape characters are in use.
  FormatOptions options;
  int quoting_style = 0;
  if (quoted) {
    quoting_style = static_cast<int>(rng.below(3));
    // Wrapping every cell in a quote that can also delimit (the tilde) makes
    // the quote itself the most regular delimiter; such files quote minimally.
    if (!CharacterPolicy::defaults().blocked_delimiters.contains(*d.quote_char)) {
      quoting_style = 2;
    }
    if (quoting_style == 0) {
      options.quoting = FormatOptions::Quoting::All;
    } else if (quoting_style == 1) {
      options.force_quote = [&columns, first_data](std::size_t row, std::size_t col, std::string_view) {
        return row < first_data || (col < columns.size() && is_text(columns[col].family));
      };
    }
    if (quoting_style != 0) {
      const auto n = 1 + rng.below(1 + height / 8);
      for (std::size_t i = 0; i < n; ++i) {
        random_data_cell() = std::string(rng.pick(kWords)) + delim + " " + rng.pick(kWords);
      }
    }
  }
  if (d.escape_char) {
    const auto n = 1 + rng.below(1 + height / 8);
    for (std::size_t i = 0; i < n; ++i) {
      if (quoted) {
        options.escape_quotes = true;
        // Also holds the delimiter so the cell needs quoting on its own.
        random_data_cell() = std::string(rng.pick(kWords)) + delim + " " + std::to_string(rng.between(2, 40)) +
                             to_utf8(*d.quote_char) + " " + rng.pick(kWords);
      } else {
        random_data_cell() = std::string(rng.pick(kWords)) + delim + rng.pick(kWords);
      }
    }
  }

  // Mess features.
  if (mess(spec.mess.empty_cells, "empty_cells", true)) {
    const double rate = 0.05 + 0.2 * rng.unit();
    for (std::size_t r = first_data; r < table.rows.size(); ++r) {
      for (auto& cell : table.rows[r]) {
        if (rng.chance(rate)) {
          cell.clear();
        }
      }
    }
  }
  if (mess(spec.mess.multiline, "multiline", quoted)) {
    const auto n = 1 + rng.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      random_data_cell() = std::string(rng.pick(kWords)) + "\n" + rng.pick(kWords) + " " + rng.pick(kWords);
    }
  }
  if (mess(spec.mess.nested_quotes, "nested_quotes", quoted)) {
    const auto q = to_utf8(*d.quote_char);
    const auto n = 1 + rng.below(3);
    for (std::size_t i = 0; i < n; ++i) {
      random_data_cell() = std::string(rng.pick(kWords)) + " " + q + rng.pick(kWords) + q;
    }
  }
  if (mess(spec.mess.unquoted_quotes, "unquoted_quotes", true)) {
    std::vector<char32_t> others;
    for (char32_t q : kOtherQuotes) {
      if (q != d.quote_char && q != d.delimiter && q != d.escape_char) {
        others.push_back(q);
      }
    }
    const auto n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n && !others.empty(); ++i) {
      const std::string w = rng.pick(kWords);
      random_data_cell() = w.substr(0, 1) + to_utf8(rng.pick(others)) + w.substr(1);
    }
  }
  if (mess(spec.mess.ragged, "ragged", true)) {
    const auto n = 1 + rng.below(1 + height / 6);
    for (std::size_t i = 0; i < n; ++i) {
      auto& row = table.rows[first_data + rng.below(height)];
      if (row.size() > 1 && rng.chance(0.5)) {
        row.pop_back();
      } else {
        row.push_back(std::to_string(rng.between(0, 99)));
      }
    }
  }
  if (mess(spec.mess.comments, "comments", true)) {
    const auto prefix = comment_prefix(d);
    const auto n = 1 + rng.below(3);
    std::vector<Row> comments;
    for (std::size_t i = 0; i < n; ++i) {
      std::string text = prefix + " " + rng.pick(kWords);
      if (!quoted && contains(text, d.delimiter)) {
        text = prefix + rng.pick(kWords);
      }
      Row row(width, std::string());
      row[0] = std::move(text);
      comments.push_back(std::move(row));
    }
    table.rows.insert(table.rows.begin(), comments.begin(), comments.end());
  }

  options.line_terminator = rng.chance(0.8) ? "\n" : "\r\n";
  options.trailing_newline = rng.chance(0.85);
  file.text = format(table, d, options);
  file.dialect = d;
  return file;
}

}  // namespace

bool MessRates::any() const {
  return comments > 0 || multiline > 0 || nested_quotes > 0 || ragged > 0 || empty_cells > 0 ||
         unquoted_quotes > 0;
}

void GeneratorSpec::validate() const {
  if (delimiters.empty()) {
    throw std::invalid_argument("generator: empty delimiter pool");
  }
  if (quotes.empty()) {
    throw std::invalid_argument("generator: empty quote pool");
  }
  if (escape_probability < 0 || escape_probability > 1 || junk_fraction < 0 || junk_fraction > 1) {
    throw std::invalid_argument("generator: probabilities must lie in [0, 1]");
  }
  for (double r : {mess.comments, mess.multiline, mess.nested_quotes, mess.ragged, mess.empty_cells,
                   mess.unquoted_quotes}) {
    if (r < 0 || r > 1) {
      throw std::invalid_argument("generator: mess rates must lie in [0, 1]");
    }
  }
  if (min_rows == 0 || min_rows > max_rows) {
    throw std::invalid_argument("generator: invalid row range");
  }
  if (min_columns == 0 || min_columns > max_columns) {
    throw std::invalid_argument("generator: invalid column range");
  }
  for (char32_t c : delimiters) {
    if (c == U'\n' || c == U'\r') {
      throw std::invalid_argument("generator: newline cannot be a delimiter");
    }
  }
}

nlohmann::json GeneratorSpec::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["count"] = count;
  auto delims = nlohmann::json::array();
  for (char32_t c : delimiters) {
    delims.push_back(to_utf8(c));
  }
  j["delimiters"] = delims;
  auto qs = nlohmann::json::array();
  for (const auto& q : quotes) {
    qs.push_back(csvdialect::to_string(q));
  }
  j["quotes"] = qs;
  auto es = nlohmann::json::array();
  for (char32_t c : escapes) {
    es.push_back(to_utf8(c));
  }
  j["escapes"] = es;
  j["escape_probability"] = escape_probability;
  j["mess"] = {{"comments", mess.comments},           {"multiline", mess.multiline},
               {"nested_quotes", mess.nested_quotes}, {"ragged", mess.ragged},
               {"empty_cells", mess.empty_cells},     {"unquoted_quotes", mess.unquoted_quotes}};
  j["junk_fraction"] = junk_fraction;
  j["rows"] = {min_rows, max_rows};
  j["columns"] = {min_columns, max_columns};
  return j;
}

std::vector<GeneratedFile> generate_corpus(const GeneratorSpec& spec) {
  spec.validate();
  std::vector<GeneratedFile> files;
  files.reserve(spec.count);
  for (std::size_t i = 0; i < spec.count; ++i) {
    files.push_back(generate_one(spec, i));
  }
  return files;
}

std::vector<LabeledRecord> generate(const GeneratorSpec& spec, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const auto files = generate_corpus(spec);
  std::vector<fs::path> written;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& p : written) {
      fs::remove(p, ec);
    }
  };
  std::vector<LabeledRecord> records;
  try {
    fs::create_directories(out_dir);
    auto write = [&](const fs::path& path, std::string_view data) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) {
        written.push_back(path);
      }
      out.write(data.data(), static_cast<std::streamsize>(data.size()));
      out.close();
      if (!out) {
        throw Error(path.string() + ": write failed");
      }
    };
    std::string labels;
    for (const auto& f : files) {
      LabeledRecord record;
      record.path = out_dir / f.name;
      record.dialect = f.dialect;
      record.origin = Origin::Synthetic;
      record.standard = is_standard(f.dialect);
      record.features = f.features;
      write(record.path, f.text);
      labels += label_line(record, out_dir);
      labels += '\n';
      records.push_back(std::move(record));
    }
    write(out_dir / kLabelsFileName, labels);
  } catch (const Error&) {
    cleanup();
    throw;
  } catch (const std::exception& e) {
    cleanup();
    throw Error(out_dir.string() + ": " + e.what());
  }
  return records;
}

}  // namespace csvdialect
