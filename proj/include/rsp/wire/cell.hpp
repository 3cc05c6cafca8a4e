#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rsp {

/// Canonical column type vocabulary.
enum class DataType { Int, Long, Decimal, Varchar, Text, Boolean, Datetime };

std::string_view to_string(DataType type) noexcept;
std::optional<DataType> parse_data_type(std::string_view name) noexcept;

inline bool is_character_type(DataType type) noexcept {
  return type == DataType::Varchar || type == DataType::Text;
}

/// Exact decimal value parsed from `-?[0-9]+(\.[0-9]+)?`. Stored normalized
/// (no leading integer zeros, no trailing fraction zeros, no negative zero) so
/// that equal values compare equal.
class Decimal {
 public:
  static std::optional<Decimal> parse(std::string_view text);
  static Decimal from_integer(std::int64_t value);

  std::strong_ordering operator<=>(const Decimal& other) const;
  bool operator==(const Decimal& other) const = default;

  std::string to_string() const;

 private:
  bool negative_ = false;
  std::string integer_;   // no leading zeros; empty means 0
  std::string fraction_;  // no trailing zeros
};

/// Parses a canonical integer cell into the range of `type` (Int is 32-bit,
/// Long is 64-bit).
std::optional<std::int64_t> parse_integer_cell(std::string_view text, DataType type);

/// Validates `YYYY-MM-DDTHH:MM:SSZ` including calendar validity.
bool is_canonical_datetime(std::string_view text);

std::optional<bool> parse_boolean_cell(std::string_view text) noexcept;

/// True iff `text` is a valid canonical encoding of a value of `type`.
/// Length limits are not checked here.
bool is_canonical_cell(DataType type, std::string_view text);

/// Three-way comparison of two canonical cells of the same type. Numeric for
/// int/long/decimal, chronological for datetime, code-point order for
/// character types, false < true for boolean.
/// Throws CorruptCell if either side is not canonical.
std::strong_ordering compare_cells(DataType type, std::string_view a, std::string_view b);

/// Number of Unicode code points in a UTF-8 string. Invalid sequences count
/// one per byte.
std::size_t code_point_length(std::string_view utf8) noexcept;

/// True iff `text` is well-formed UTF-8.
bool is_valid_utf8(std::string_view text) noexcept;

}  // namespace rsp
