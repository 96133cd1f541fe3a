#include <fstream>

#include "csvdialect/error.hpp"
#include "csvdialect/evalgen.hpp"

namespace csvdialect {

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::Human: return "human";
    case Origin::Automatic: return "automatic";
    case Origin::Synthetic: return "synthetic";
  }
  return "synthetic";
}

std::optional<Origin> origin_from_string(std::string_view name) {
  for (auto o : {Origin::Human, Origin::Automatic, Origin::Synthetic}) {
    if (to_string(o) == name) {
      return o;
    }
  }
  return std::nullopt;
}

bool is_standard(const Dialect& d) {
  return d.delimiter == U',' && (!d.quote_char || d.quote_char == U'"') && !d.escape_char;
}

std::vector<LabeledRecord> read_labels(const std::filesystem::path& labels_file,
                                       const std::filesystem::path& corpus_dir) {
  std::ifstream in(labels_file);
  if (!in) {
    throw Error(labels_file.string() + ": cannot open labels file");
  }
  std::vector<LabeledRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const auto j = nlohmann::json::parse(line);
      LabeledRecord record;
      record.path = corpus_dir / j.at("filename").get<std::string>();
      record.dialect = dialect_from_json(j);
      const auto origin_name = j.value("origin", std::string("human"));
      const auto origin = origin_from_string(origin_name);
      if (!origin) {
        throw std::invalid_argument("unknown origin \"" + origin_name + "\"");
      }
      record.origin = *origin;
      record.standard = is_standard(record.dialect);
      if (j.contains("features")) {
        record.features = j.at("features").get<std::vector<std::string>>();
      }
      out.push_back(std::move(record));
    } catch (const std::exception& e) {
      throw Error(labels_file.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string label_line(const LabeledRecord& record, const std::filesystem::path& corpus_dir) {
  // Key order is fixed so that label files are byte-stable.
  nlohmann::ordered_json j;
  j["filename"] = record.path.lexically_relative(corpus_dir).generic_string();
  j["delimiter"] = to_string(record.dialect.delimiter);
  j["quotechar"] = to_string(record.dialect.quote_char);
  j["escapechar"] = to_string(record.dialect.escape_char);
  j["origin"] = to_string(record.origin);
  if (!record.features.empty()) {
    j["features"] = record.features;
  }
  return j.dump();
}

}  // namespace csvdialect
