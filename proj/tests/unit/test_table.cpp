#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "nlabel/table.hpp"
#include "oracles.hpp"

using nlabel::DataTable;
using nlabel::IngestOptions;
using nlabel::parse_csv;

TEST(Csv, ParsesHeaderAndRows) {
  auto t = parse_csv("a,b\n1,x\n2,y\n");
  ASSERT_EQ(t.column_count(), 2u);
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.columns()[1], "b");
  EXPECT_EQ(t.cell(1, 1), "y");
  EXPECT_FALSE(t.is_missing(0, 0));
}

TEST(Csv, QuotedFieldsKeepDelimitersQuotesAndNewlines) {
  auto t = parse_csv("name,note\n\"Janssen, Inc\",\"say \"\"hi\"\"\"\n\"multi\nline\",x\n");
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.cell(0, 0), "Janssen, Inc");
  EXPECT_EQ(t.cell(0, 1), "say \"hi\"");
  EXPECT_EQ(t.cell(1, 0), "multi\nline");
}

TEST(Csv, CrlfAndMissingFinalNewline) {
  auto t = parse_csv("a,b\r\n1,2\r\n3,4");
  ASSERT_EQ(t.row_count(), 2u);
  EXPECT_EQ(t.cell(1, 1), "4");
}

TEST(Csv, StripsBomAndSkipsBlankLines) {
  auto t = parse_csv("\xEF\xBB\xBF\nid,v\n\n1,2\n\n3,4\n\n");
  EXPECT_EQ(t.columns()[0], "id");
  EXPECT_EQ(t.row_count(), 2u);
}

TEST(Csv, MissingTokensMatchExactlyAfterTrim) {
  auto t = parse_csv("v\nNA\n N/A \nnull\nNULL\nNaN\n\nna\nnone\n\"\"\n");
  // the bare empty line is skipped; "" in quotes is an empty field
  ASSERT_EQ(t.row_count(), 8u);
  std::vector<bool> expected{true, true, true, true, true, false, false, true};
  for (std::size_t r = 0; r < expected.size(); ++r) EXPECT_EQ(t.is_missing(r, 0), expected[r]) << "row " << r;
  EXPECT_EQ(t.missing_total(), 6u);
}

TEST(Csv, CustomMissingTokensAndDelimiter) {
  IngestOptions o;
  o.missing_tokens = {"-"};
  o.delimiter = ';';
  auto t = parse_csv("a;b\n-;NA\n", o);
  EXPECT_TRUE(t.is_missing(0, 0));
  EXPECT_FALSE(t.is_missing(0, 1));
}

TEST(Csv, RaggedRowReportsRecordNumber) {
  try {
    parse_csv("a,b\n1,2\n1,2,3\n");
    FAIL() << "expected ParseError";
  } catch (const nlabel::ParseError& e) {
    EXPECT_EQ(e.record(), 3u);
    EXPECT_NE(std::string(e.what()).find("expected 2 fields, found 3"), std::string::npos);
  }
}

TEST(Csv, Errors) {
  EXPECT_THROW(parse_csv(""), nlabel::ParseError);
  EXPECT_THROW(parse_csv("\n\n"), nlabel::ParseError);
  EXPECT_THROW(parse_csv("a,a\n1,2\n"), nlabel::ParseError);
  EXPECT_THROW(parse_csv("a\n\"open\n"), nlabel::ParseError);
  EXPECT_THROW(parse_csv("a\n\"x\"y\n"), nlabel::ParseError);
  IngestOptions o;
  o.delimiter = '"';
  EXPECT_THROW(parse_csv("a\n1\n", o), nlabel::ConfigError);
}

TEST(Csv, RowLimit) {
  IngestOptions o;
  o.max_rows = 2;
  EXPECT_NO_THROW(parse_csv("a\n1\n2\n", o));
  EXPECT_THROW(parse_csv("a\n1\n2\n3\n", o), nlabel::ParseError);
}

TEST(Csv, HeaderOnlyGivesEmptyTable) {
  auto t = parse_csv("a,b\n");
  EXPECT_EQ(t.row_count(), 0u);
  EXPECT_EQ(t.column_count(), 2u);
}

TEST(Csv, ReadFileUsesBasenameAsSource) {
  auto t = nlabel::read_csv_file(oracle::fixture("docs_payments.csv"));
  EXPECT_EQ(t.source_name(), "docs_payments.csv");
  EXPECT_EQ(t.row_count(), 500u);
  EXPECT_EQ(t.column_count(), 18u);
  EXPECT_EQ(t.missing_total(), 468u);
  EXPECT_THROW(nlabel::read_csv_file("/nonexistent/file.csv"), nlabel::Error);
}

TEST(Csv, ColumnLookup) {
  auto t = parse_csv("a,b\n1,2\n");
  EXPECT_EQ(t.column_index("b"), 1u);
  EXPECT_EQ(t.find_column("zz"), 2u);
  EXPECT_THROW(t.column_index("zz"), nlabel::ConfigError);
}

// parse(write(t)) == t for arbitrary cell text.
TEST(CsvProperty, WriteThenParseRoundTrips) {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab ,\"\n\r;x1";
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t cols = 1 + rng() % 4, rows = rng() % 6;
    std::vector<std::string> names, cells;
    std::vector<std::uint8_t> mask;
    for (std::size_t c = 0; c < cols; ++c) names.push_back("col" + std::to_string(c));
    IngestOptions o;
    o.missing_tokens = {};
    for (std::size_t i = 0; i < rows * cols; ++i) {
      std::string s;
      for (std::size_t k = rng() % 5; k > 0; --k) s += alphabet[rng() % alphabet.size()];
      cells.push_back(s);
      mask.push_back(0);
    }
    DataTable t(names, cells, mask, "");
    auto bytes = nlabel::write_csv(t);
    auto back = parse_csv(bytes, o);
    ASSERT_EQ(back, t) << bytes;
  }
}
