#include <gtest/gtest.h>

#include "rsp/wire/cell.hpp"
#include "rsp/wire/error.hpp"

namespace rsp {
namespace {

TEST(Cell, DataTypeVocabulary) {
  for (auto name : {"int", "long", "decimal", "varchar", "text", "boolean", "datetime"}) {
    auto t = parse_data_type(name);
    ASSERT_TRUE(t.has_value()) << name;
    EXPECT_EQ(to_string(*t), name);
  }
  EXPECT_FALSE(parse_data_type("INT"));
  EXPECT_FALSE(parse_data_type("uuid"));
}

TEST(Cell, Integers) {
  EXPECT_EQ(parse_integer_cell("-42", DataType::Int), -42);
  EXPECT_EQ(parse_integer_cell("2147483647", DataType::Int), 2147483647);
  EXPECT_FALSE(parse_integer_cell("2147483648", DataType::Int));
  EXPECT_EQ(parse_integer_cell("2147483648", DataType::Long), 2147483648LL);
  EXPECT_FALSE(parse_integer_cell("9223372036854775808", DataType::Long));
  EXPECT_FALSE(parse_integer_cell("+1", DataType::Int));
  EXPECT_FALSE(parse_integer_cell("1.0", DataType::Int));
  EXPECT_FALSE(parse_integer_cell("", DataType::Int));
  EXPECT_FALSE(parse_integer_cell("-", DataType::Int));
  EXPECT_FALSE(parse_integer_cell(" 1", DataType::Int));
}

TEST(Cell, Decimals) {
  EXPECT_TRUE(is_canonical_cell(DataType::Decimal, "5200.50"));
  EXPECT_TRUE(is_canonical_cell(DataType::Decimal, "-3"));
  EXPECT_FALSE(is_canonical_cell(DataType::Decimal, "1e5"));
  EXPECT_FALSE(is_canonical_cell(DataType::Decimal, "1,5"));
  EXPECT_FALSE(is_canonical_cell(DataType::Decimal, ".5"));
  EXPECT_FALSE(is_canonical_cell(DataType::Decimal, "5."));
  EXPECT_EQ(*Decimal::parse("1.50"), *Decimal::parse("1.5"));
  EXPECT_EQ(*Decimal::parse("-0.0"), *Decimal::parse("0"));
  EXPECT_LT(*Decimal::parse("-2.5"), *Decimal::parse("-2.25"));
  EXPECT_LT(*Decimal::parse("9.99"), *Decimal::parse("10"));
  EXPECT_LT(*Decimal::parse("0.09"), *Decimal::parse("0.1"));
  EXPECT_GT(*Decimal::parse("100000000000000000000.1"), Decimal::from_integer(INT64_MAX));
  EXPECT_EQ(Decimal::parse("007.100")->to_string(), "7.1");
  EXPECT_EQ(Decimal::from_integer(INT64_MIN).to_string(), "-9223372036854775808");
}

TEST(Cell, Datetimes) {
  EXPECT_TRUE(is_canonical_datetime("2024-02-29T23:59:59Z"));
  EXPECT_FALSE(is_canonical_datetime("2023-02-29T00:00:00Z"));
  EXPECT_FALSE(is_canonical_datetime("2023-13-01T00:00:00Z"));
  EXPECT_FALSE(is_canonical_datetime("2023-01-01T24:00:00Z"));
  EXPECT_FALSE(is_canonical_datetime("2023-01-01 00:00:00Z"));
  EXPECT_FALSE(is_canonical_datetime("2023-01-01T00:00:00"));
  EXPECT_FALSE(is_canonical_datetime("2023-01-01T00:00:00+01:00"));
}

TEST(Cell, Booleans) {
  EXPECT_TRUE(is_canonical_cell(DataType::Boolean, "true"));
  EXPECT_TRUE(is_canonical_cell(DataType::Boolean, "false"));
  EXPECT_FALSE(is_canonical_cell(DataType::Boolean, "True"));
  EXPECT_FALSE(is_canonical_cell(DataType::Boolean, "1"));
}

TEST(Cell, CompareByType) {
  EXPECT_TRUE(compare_cells(DataType::Int, "9", "10") < 0);
  EXPECT_TRUE(compare_cells(DataType::Text, "9", "10") > 0);
  EXPECT_TRUE(compare_cells(DataType::Decimal, "1.0", "1") == 0);
  EXPECT_TRUE(compare_cells(DataType::Boolean, "false", "true") < 0);
  EXPECT_TRUE(compare_cells(DataType::Datetime, "1999-12-31T23:59:59Z", "2000-01-01T00:00:00Z") < 0);
  EXPECT_TRUE(compare_cells(DataType::Varchar, "B", "a") < 0) << "code-point order is case-sensitive";
  EXPECT_THROW(compare_cells(DataType::Int, "x", "1"), CorruptCell);
}

TEST(Cell, Utf8) {
  EXPECT_EQ(code_point_length("Přehnal"), 7u);
  EXPECT_EQ(code_point_length("𝄞"), 1u);
  EXPECT_TRUE(is_valid_utf8("žluťoučký kůň"));
  EXPECT_FALSE(is_valid_utf8("\xc3"));
  EXPECT_FALSE(is_valid_utf8("\xc0\xaf"));  // overlong
  EXPECT_FALSE(is_valid_utf8("\xed\xa0\x80"));  // surrogate
}

}  // namespace
}  // namespace rsp
