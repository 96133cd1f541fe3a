#include <gtest/gtest.h>

#include "csvdialect/error.hpp"
#include "csvdialect/scoring.hpp"
#include "support.hpp"

using namespace csvdialect;
using csvdialect::testing::make;
using csvdialect::testing::naive_pattern_score;

namespace {

RowPatternTable table(std::map<std::string, std::size_t> counts) { return RowPatternTable{std::move(counts)}; }

CellTable cells(std::vector<std::string> values) { return CellTable{{Row(values.begin(), values.end())}}; }

}  // namespace

TEST(PatternScore, HandEvaluatedValues) {
  EXPECT_NEAR(pattern_score(table({{"CDC", 3}})), 3.0 * (1.0 / 2.0), 1e-12);
  EXPECT_NEAR(pattern_score(table({{"C", 5}})), 5.0 * 1e-3 / 1.0, 1e-12);
  EXPECT_NEAR(pattern_score(table({{"CDCDC", 4}, {"CDC", 1}})), (4.0 * (2.0 / 3.0) + 1.0 * (1.0 / 2.0)) / 2.0,
              1e-12);
  EXPECT_NEAR(pattern_score(table({{"CDCDC", 4}, {"CDC", 1}})), 1.5833333333333333, 1e-12);
}

TEST(PatternScore, StrayQuotesDoNotChangeLength) {
  EXPECT_EQ(RowPatternTable::length("CDCQCDC"), 3u);
  EXPECT_NE(pattern_score(table({{"CDCQCDC", 1}, {"CDCDC", 1}})), pattern_score(table({{"CDCDC", 2}})));
}

TEST(PatternScore, EmptyTableIsAnError) {
  EXPECT_THROW(pattern_score(table({})), EmptyInputError);
}

TEST(PatternScore, AlphaIsConfigurable) {
  EXPECT_NEAR(pattern_score(table({{"C", 5}}), {0.5, 1e-10}), 2.5, 1e-12);
}

TEST(PatternScore, MatchesNaiveOracleOnFuzzedText) {
  csvdialect::testing::TableFuzzer fuzz(99);
  const std::string alphabet = "ab1,;\"\n\r '";
  for (int i = 0; i < 400; ++i) {
    std::string text;
    const std::size_t n = 1 + fuzz.below(60);
    for (std::size_t k = 0; k < n; ++k) {
      text += alphabet[fuzz.below(alphabet.size())];
    }
    for (const auto& d : {make(","), make(";", "\""), make("")}) {
      const auto parsed = parse_with_patterns(text, d);
      if (parsed.row_patterns.empty()) {
        continue;
      }
      EXPECT_NEAR(pattern_score(parsed.pattern_table()), naive_pattern_score(parsed.row_patterns, 1e-3), 1e-12)
          << text;
    }
  }
}

TEST(PatternScore, AlwaysPositive) {
  EXPECT_GT(pattern_score(table({{"C", 1}})), 0.0);
  EXPECT_GT(pattern_score(table({{"C", 1}, {"CDC", 1}, {"CDCDC", 1}})), 0.0);
}

TEST(PatternScore, SingleDistinctPatternMaximises) {
  // Same total rows and row length; more distinct patterns only lowers P.
  EXPECT_GT(pattern_score(table({{"CDC", 4}})), pattern_score(table({{"CDC", 2}, {"CQCDC", 2}})));
}

TEST(TypeScore, Examples) {
  EXPECT_DOUBLE_EQ(type_score(cells({"1.2", "x@y.com", "??~", ""})).raw, 0.75);
  const auto unknown = type_score(cells({"??~"}));
  EXPECT_EQ(unknown.raw, 0.0);
  EXPECT_EQ(unknown.clamped, 1e-10);
  EXPECT_EQ(type_score(cells({"7", "8"})).raw, 1.0);
}

TEST(TypeScore, EmptyTableIsAnError) {
  EXPECT_THROW(type_score(CellTable{}), EmptyInputError);
}

TEST(TypeScore, CacheGivesSameResult) {
  TypeCache cache;
  const auto t = cells({"1", "a", "<x>", "1", "<x>"});
  EXPECT_EQ(type_score(t, {}, &cache).raw, type_score(t).raw);
  EXPECT_EQ(type_score(t, {}, &cache).raw, 0.6);
}

TEST(Consistency, Examples) {
  const auto comma = consistency("a,b\n1,2", make(","));
  EXPECT_NEAR(comma.pattern, 2.0 * (1.0 / 2.0) / 1.0, 1e-12);
  EXPECT_EQ(comma.type_raw, 1.0);
  EXPECT_NEAR(comma.q, 1.0, 1e-12);
  EXPECT_EQ(comma.cells_total, 4u);
  EXPECT_EQ(comma.patterns_distinct, 1u);

  const auto single = consistency("a,b\n1,2", make(""));
  EXPECT_NEAR(single.pattern, 2.0 * 1e-3 / 1.0, 1e-12);
  EXPECT_GT(comma.q, single.q);
}

TEST(Consistency, QIsPatternTimesClampedType) {
  for (const char* text : {"a,b\n1,2", "??~;x\n<>;1", "x", "\"a\",\"b\"\n1,2,3"}) {
    for (const auto& d : get_dialects(text)) {
      const auto parsed = parse_with_patterns(text, d);
      const auto s = consistency(text, d);
      EXPECT_EQ(s.q, s.pattern * s.type_clamped);
      EXPECT_EQ(s.pattern, pattern_score(parsed.pattern_table()));
      EXPECT_EQ(s.type_raw, type_score(parsed.table).raw);
      EXPECT_EQ(s.type_clamped, std::max(1e-10, s.type_raw));
      EXPECT_GT(s.q, 0.0);
      EXPECT_GE(s.type_clamped, 1e-10);
      EXPECT_LE(s.type_clamped, 1.0);
    }
  }
}

TEST(Consistency, EmptyTextIsAnError) {
  EXPECT_THROW(consistency("", make(",")), EmptyInputError);
}

TEST(Consistency, NewlineOnlyFileIsOneEmptyCellPerLine) {
  const auto s = consistency("\n\n\n", make(""));
  EXPECT_EQ(s.cells_total, 3u);
  EXPECT_EQ(s.type_raw, 1.0);
}

TEST(Consistency, DuplicatingRowsDoublesPatternKeepsType) {
  const std::string file = "a,b,1\n2,,x\n\"q\",3,??\n";
  for (const auto& d : {make(","), make(",", "\""), make("")}) {
    const auto once = consistency(file, d);
    const auto twice = consistency(file + file, d);
    EXPECT_NEAR(twice.pattern, 2.0 * once.pattern, 1e-12);
    EXPECT_EQ(twice.type_raw, once.type_raw);
  }
}

TEST(Consistency, TrueDialectBeatsAbsentDelimiter) {
  const std::string file = "a;b;c\n1;2;3\n4;5;6";
  EXPECT_GE(consistency(file, make(";")).pattern, consistency(file, make(",")).pattern);
  EXPECT_GE(consistency(file, make(";")).pattern, consistency(file, make("")).pattern);
}

TEST(ScoreConstants, Validation) {
  EXPECT_NO_THROW((ScoreConstants{}.validate()));
  EXPECT_THROW((ScoreConstants{0.0, 1e-10}.validate()), std::invalid_argument);
  EXPECT_THROW((ScoreConstants{1e-3, -1.0}.validate()), std::invalid_argument);
}

TEST(ScoreBreakdown, JsonHasEveryField) {
  const auto j = to_json(consistency("a,b", make(",")));
  for (const char* key : {"pattern", "type_raw", "type_clamped", "q", "cells_total", "patterns_distinct"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}
