#include "csvdialect/typeinfer.hpp"

#include <atomic>
#include <stdexcept>
#include <unordered_map>

#include <unicode/regex.h>
#include <unicode/unistr.h>

namespace csvdialect {

namespace {

// Building blocks of the standard registry. ASCII digits only; \p{..}
// classes are Unicode general categories.
const std::string kGrouped =
    R"([+\-]?[1-9][0-9]{0,2}(?:(?:,[0-9]{3})+(?:\.[0-9]+)?|(?:\.[0-9]{3})+(?:,[0-9]+)?))";
const std::string kPlain = R"([+\-]?(?:[0-9]+(?:[.,][0-9]*)?|[.,][0-9]+)(?:[eE][+\-]?[0-9]+)?)";
const std::string kTime = R"((?:[01]?[0-9]|2[0-3]):[0-5][0-9](?::[0-5][0-9])?)";
const std::string kUrl = R"((?:[A-Za-z][A-Za-z0-9+.\-]*://|www\.)\S+)";
const std::string kEmail = R"([A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,})";
// Space, period, exclamation and question marks, parentheses, and their
// full-width forms.
const std::string kSpecial = "[ .!?()！？（）．]";
const std::string kAlnumTail = "[\\p{L}\\p{M}\\p{N} .!?()！？（）．]*";
const std::string kTimezone = R"((?:[+\-](?:[01][0-9]|2[0-3]):?[0-5][0-9])?)";

const std::string kYear4 = "[0-9]{4}";
const std::string kYear2 = "[0-9]{2}";
const std::string kMonthPadded = "(?:0[1-9]|1[0-2])";
const std::string kDayPadded = "(?:0[1-9]|[12][0-9]|3[01])";
const std::string kMonthLoose = "(?:0?[1-9]|1[0-2])";
const std::string kDayLoose = "(?:0?[1-9]|[12][0-9]|3[01])";

std::vector<std::string> build_date_formats() {
  enum class Order { YMD, DMY, MDY };
  std::vector<std::string> out;
  for (Order order : {Order::YMD, Order::DMY, Order::MDY}) {
    for (const auto* year : {&kYear4, &kYear2}) {
      for (bool padded : {true, false}) {
        const std::string& month = padded ? kMonthPadded : kMonthLoose;
        const std::string& day = padded ? kDayPadded : kDayLoose;
        for (const char* sep : {"-", "\\.", " "}) {
          switch (order) {
            case Order::YMD:
              out.push_back(*year + sep + month + sep + day);
              break;
            case Order::DMY:
              out.push_back(day + sep + month + sep + *year);
              break;
            case Order::MDY:
              out.push_back(month + sep + day + sep + *year);
              break;
          }
        }
      }
    }
  }
  const std::string year = "(?:" + kYear4 + "|" + kYear2 + ")";
  out.push_back(year + "年" + kMonthLoose + "月" + kDayLoose + "日");  // 年月日
  out.push_back(year + "년" + kMonthLoose + "월" + kDayLoose + "일");  // 년월일
  return out;
}

std::string alternation(const std::vector<std::string>& parts) {
  std::string out = "(?:";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += "|";
    }
    out += parts[i];
  }
  return out + ")";
}

std::vector<TypeRegistry::Entry> standard_entries() {
  const std::string number = "(?:" + kGrouped + "|" + kPlain + ")";
  const std::string date = alternation(date_formats());
  return {
      {DataType::Empty, ""},
      {DataType::Url, kUrl},
      {DataType::Email, kEmail},
      {DataType::NumberGrouped, kGrouped},
      {DataType::NumberPlain, kPlain},
      {DataType::Time, kTime},
      {DataType::Percentage, number + "%"},
      {DataType::Currency, "\\p{Sc}" + number},
      {DataType::Alphanumeric,
       "\\p{N}+" + kSpecial + "*\\p{L}" + kAlnumTail + "|\\p{L}" + kAlnumTail},
      {DataType::NA, "n/a|N/A"},
      {DataType::Date, date},
      {DataType::DateTime, date + "(?: |T)" + kTime + kTimezone},
  };
}

icu::UnicodeString to_unicode(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::atomic<std::uint64_t> next_registry_id{1};

}  // namespace

struct TypeRegistry::Compiled {
  std::vector<std::unique_ptr<icu::RegexPattern>> patterns;
};

std::string_view to_string(DataType type) {
  switch (type) {
    case DataType::Empty: return "empty";
    case DataType::Url: return "url";
    case DataType::Email: return "email";
    case DataType::NumberGrouped: return "number_grouped";
    case DataType::NumberPlain: return "number";
    case DataType::Time: return "time";
    case DataType::Percentage: return "percentage";
    case DataType::Currency: return "currency";
    case DataType::Alphanumeric: return "alphanumeric";
    case DataType::NA: return "na";
    case DataType::Date: return "date";
    case DataType::DateTime: return "datetime";
    case DataType::Unknown: return "unknown";
  }
  return "unknown";
}

const std::vector<std::string>& date_formats() {
  static const std::vector<std::string> formats = build_date_formats();
  return formats;
}

const TypeRegistry& TypeRegistry::standard() {
  static const TypeRegistry registry(standard_entries());
  return registry;
}

TypeRegistry::TypeRegistry(std::vector<Entry> entries)
    : entries_(std::move(entries)), compiled_(std::make_unique<Compiled>()), id_(next_registry_id++) {
  for (const auto& entry : entries_) {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error;
    std::unique_ptr<icu::RegexPattern> pattern(
        icu::RegexPattern::compile(to_unicode(entry.pattern), 0, parse_error, status));
    if (U_FAILURE(status)) {
      throw std::invalid_argument("invalid pattern for type " + std::string(to_string(entry.type)) +
                                  ": " + u_errorName(status));
    }
    compiled_->patterns.push_back(std::move(pattern));
  }
}

TypeRegistry::~TypeRegistry() = default;

DataType TypeRegistry::detect(std::string_view cell) const {
  // RegexMatcher is not thread-safe; each thread keeps its own matchers.
  thread_local std::unordered_map<std::uint64_t, std::vector<std::unique_ptr<icu::RegexMatcher>>>
      matchers_by_registry;
  auto& matchers = matchers_by_registry[id_];
  if (matchers.empty()) {
    for (const auto& pattern : compiled_->patterns) {
      UErrorCode status = U_ZERO_ERROR;
      matchers.emplace_back(pattern->matcher(status));
      if (U_FAILURE(status)) {
        throw std::runtime_error("could not create regex matcher");
      }
    }
  }

  const icu::UnicodeString input = to_unicode(cell);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].type == DataType::Empty) {
      if (cell.empty()) {
        return DataType::Empty;
      }
      continue;
    }
    UErrorCode status = U_ZERO_ERROR;
    auto& matcher = *matchers[i];
    matcher.reset(input);
    const bool matched = matcher.matches(status);
    matcher.reset();
    if (U_SUCCESS(status) && matched) {
      return entries_[i].type;
    }
  }
  return DataType::Unknown;
}

nlohmann::json TypeRegistry::dump() const {
  auto types = nlohmann::json::array();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    types.push_back({{"order", i}, {"type", to_string(entries_[i].type)}, {"pattern", entries_[i].pattern}});
  }
  return {{"types", types}, {"date_formats", date_formats()}, {"date_format_count", date_formats().size()}};
}

DataType detect_type(std::string_view cell) { return TypeRegistry::standard().detect(cell); }

bool is_known_type(std::string_view cell) { return detect_type(cell) != DataType::Unknown; }

}  // namespace csvdialect
