#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <thread>
#include <tuple>

#include "csvdialect/typeinfer.hpp"

using namespace csvdialect;

namespace {

std::string printf_string(const char* pattern, int a, int b, int c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// Every rendering of day/month/year admitted by the date families: three
// field orders, 4- or 2-digit years, padded or bare month/day, and three
// separators.
std::vector<std::string> enumerate_dates(int year, int month, int day) {
  std::vector<std::string> out;
  for (const char* sep : {"-", ".", " "}) {
    for (bool four : {true, false}) {
      const int y = four ? year : year % 100;
      const std::string yf = four ? "%04d" : "%02d";
      for (bool padded : {true, false}) {
        const std::string f = padded ? "%02d" : "%d";
        out.push_back(printf_string((yf + sep + f + sep + f).c_str(), y, month, day));
        out.push_back(printf_string((f + sep + f + sep + yf).c_str(), day, month, y));
        out.push_back(printf_string((f + sep + f + sep + yf).c_str(), month, day, y));
      }
    }
  }
  return out;
}

DataType type_under(const TypeRegistry& registry, DataType only, std::string_view cell) {
  std::vector<TypeRegistry::Entry> entries;
  for (const auto& e : registry.entries()) {
    if (e.type == only) {
      entries.push_back(e);
    }
  }
  return TypeRegistry(entries).detect(cell);
}

}  // namespace

TEST(DetectType, PublishedExamples) {
  EXPECT_EQ(detect_type(""), DataType::Empty);
  EXPECT_EQ(detect_type("1,234.56"), DataType::NumberGrouped);
  EXPECT_EQ(detect_type("123e10"), DataType::NumberPlain);
  EXPECT_EQ(detect_type("16:45"), DataType::Time);
  EXPECT_EQ(detect_type("3 degrees"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("NW1 2DB"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("n/a"), DataType::NA);
  EXPECT_EQ(detect_type("2021-03-04T16:45"), DataType::DateTime);
  EXPECT_EQ(detect_type("€12.50"), DataType::Currency);
}

TEST(DetectType, OrderSendsNanToAlphanumeric) {
  EXPECT_EQ(detect_type("nan"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("NaN"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("N/A"), DataType::NA);
}

TEST(DetectType, Numbers) {
  EXPECT_EQ(detect_type("1.234.567,89"), DataType::NumberGrouped);
  EXPECT_EQ(detect_type("-12,345"), DataType::NumberGrouped);
  EXPECT_EQ(detect_type("12"), DataType::NumberPlain);
  EXPECT_EQ(detect_type("+1,5"), DataType::NumberPlain);
  EXPECT_EQ(detect_type("-3.2e-4"), DataType::NumberPlain);
  EXPECT_EQ(detect_type(".5"), DataType::NumberPlain);
  EXPECT_EQ(detect_type("1234,567"), DataType::NumberPlain);
  EXPECT_EQ(detect_type("1,234e5"), DataType::NumberPlain);
  EXPECT_NE(detect_type("1,234.5e5"), DataType::NumberGrouped);
  EXPECT_EQ(detect_type("1,234.5e5"), DataType::Unknown);
}

TEST(DetectType, TimesPercentagesCurrency) {
  EXPECT_EQ(detect_type("9:05"), DataType::Time);
  EXPECT_EQ(detect_type("23:59:59"), DataType::Time);
  EXPECT_EQ(detect_type("24:00"), DataType::Unknown);
  EXPECT_EQ(detect_type("50%"), DataType::Percentage);
  EXPECT_EQ(detect_type("1,234.5%"), DataType::Percentage);
  EXPECT_EQ(detect_type("50 %"), DataType::Unknown);
  EXPECT_EQ(detect_type("$12"), DataType::Currency);
  EXPECT_EQ(detect_type("£1,000.00"), DataType::Currency);
  EXPECT_EQ(detect_type("¥-5"), DataType::Currency);
}

TEST(DetectType, UrlsAndEmails) {
  EXPECT_EQ(detect_type("http://example.org/a?b=1"), DataType::Url);
  EXPECT_EQ(detect_type("www.example.org"), DataType::Url);
  EXPECT_EQ(detect_type("first.last@example.co.uk"), DataType::Email);
  EXPECT_EQ(detect_type("a@b"), DataType::Unknown);
}

TEST(DetectType, Alphanumeric) {
  EXPECT_EQ(detect_type("hello"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("Hello world!"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("A1 (b)"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("日本語"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("café"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("Ｗｈａｔ？"), DataType::Alphanumeric);
  EXPECT_EQ(detect_type("a_b"), DataType::Unknown);
  EXPECT_EQ(detect_type(" hello"), DataType::Unknown);
}

TEST(DetectType, UnknownContent) {
  EXPECT_EQ(detect_type("??~"), DataType::Unknown);
  EXPECT_EQ(detect_type("<x/>"), DataType::Unknown);
  EXPECT_EQ(detect_type("2021/03/04"), DataType::Unknown);
  EXPECT_EQ(detect_type("2021-13-04"), DataType::Unknown);
  EXPECT_EQ(detect_type(" 12"), DataType::Unknown);
}

TEST(IsKnownType, Examples) {
  EXPECT_TRUE(is_known_type("hello"));
  EXPECT_FALSE(is_known_type("??~"));
  EXPECT_TRUE(is_known_type(""));
}

TEST(Dates, EveryEnumeratedRenderingIsADate) {
  for (const auto& [y, m, d] : {std::tuple{2021, 3, 4}, std::tuple{1999, 12, 31}, std::tuple{2010, 10, 9}}) {
    for (const auto& s : enumerate_dates(y, m, d)) {
      EXPECT_EQ(detect_type(s), DataType::Date) << s;
    }
  }
}

TEST(Dates, EveryEnumeratedDateTimeIsADateTime) {
  const std::vector<std::string> times{"16:45", "6:05", "16:45:00"};
  const std::vector<std::string> zones{"", "+01:00", "-0530"};
  for (const auto& date : enumerate_dates(2021, 3, 4)) {
    for (const char* joiner : {" ", "T"}) {
      for (const auto& t : times) {
        for (const auto& z : zones) {
          const std::string s = date + joiner + t + z;
          EXPECT_EQ(detect_type(s), DataType::DateTime) << s;
        }
      }
    }
  }
  EXPECT_EQ(detect_type("2021-03-04T16:45Z"), DataType::Unknown);
  EXPECT_EQ(detect_type("2021-03-04  16:45"), DataType::Unknown);
}

// The CJK forms belong to the date grammar, but the earlier alphanumeric
// test already claims them because the ideographs are letters.
TEST(Dates, CjkFormsAreDatesButOrderedAfterAlphanumeric) {
  const auto& registry = TypeRegistry::standard();
  for (const char* s : {"2021年3月4日", "21年03月04日", "2021년3월4일"}) {
    EXPECT_EQ(type_under(registry, DataType::Date, s), DataType::Date) << s;
    EXPECT_EQ(detect_type(s), DataType::Alphanumeric) << s;
  }
}

TEST(Dates, NumbersAreNeverDates) {
  for (const char* s : {"2021", "20210304", "3.4", "1.000.000"}) {
    EXPECT_NE(detect_type(s), DataType::Date) << s;
  }
}

TEST(Registry, OrderAndFormatCount) {
  const std::vector<DataType> expected{DataType::Empty,       DataType::Url,          DataType::Email,
                                       DataType::NumberGrouped, DataType::NumberPlain, DataType::Time,
                                       DataType::Percentage,  DataType::Currency,     DataType::Alphanumeric,
                                       DataType::NA,          DataType::Date,         DataType::DateTime};
  const auto& entries = TypeRegistry::standard().entries();
  ASSERT_EQ(entries.size(), expected.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    EXPECT_EQ(entries[i].type, expected[i]) << i;
  }
  EXPECT_EQ(date_formats().size(), 38u);
}

TEST(Registry, DumpListsEveryPattern) {
  const auto dump = TypeRegistry::standard().dump();
  EXPECT_EQ(dump.at("types").size(), 12u);
  EXPECT_EQ(dump.at("types")[0].at("type"), "empty");
  EXPECT_EQ(dump.at("date_format_count"), 38);
  EXPECT_EQ(dump.at("date_formats").size(), 38u);
  EXPECT_EQ(dump, TypeRegistry::standard().dump());
}

TEST(Registry, RejectsInvalidPatterns) {
  EXPECT_THROW(TypeRegistry({{DataType::NumberPlain, "("}}), std::invalid_argument);
}

TEST(Registry, ThreadSafeDetection) {
  std::vector<std::jthread> threads;
  std::atomic<int> mismatches{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 500; ++i) {
        if (detect_type("2021-03-04") != DataType::Date || detect_type("x") != DataType::Alphanumeric) {
          ++mismatches;
        }
      }
    });
  }
  threads.clear();
  EXPECT_EQ(mismatches.load(), 0);
}
