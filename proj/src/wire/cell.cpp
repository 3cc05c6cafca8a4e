#include "rsp/wire/cell.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <limits>

#include "rsp/wire/error.hpp"

namespace rsp {

namespace {

constexpr std::array<std::pair<DataType, std::string_view>, 7> kTypeNames{{
    {DataType::Int, "int"},
    {DataType::Long, "long"},
    {DataType::Decimal, "decimal"},
    {DataType::Varchar, "varchar"},
    {DataType::Text, "text"},
    {DataType::Boolean, "boolean"},
    {DataType::Datetime, "datetime"},
}};

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool all_digits(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (char c : s)
    if (!is_digit(c)) return false;
  return true;
}

int two_digits(std::string_view s, std::size_t at) noexcept {
  return (s[at] - '0') * 10 + (s[at + 1] - '0');
}

}  // namespace

std::string_view to_string(DataType type) noexcept {
  for (const auto& [t, name] : kTypeNames)
    if (t == type) return name;
  return "?";
}

std::optional<DataType> parse_data_type(std::string_view name) noexcept {
  for (const auto& [t, n] : kTypeNames)
    if (n == name) return t;
  return std::nullopt;
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  Decimal d;
  if (!text.empty() && text.front() == '-') {
    d.negative_ = true;
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (!all_digits(whole)) return std::nullopt;
  if (dot != std::string_view::npos && !all_digits(frac)) return std::nullopt;

  while (!whole.empty() && whole.front() == '0') whole.remove_prefix(1);
  while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
  d.integer_ = std::string(whole);
  d.fraction_ = std::string(frac);
  if (d.integer_.empty() && d.fraction_.empty()) d.negative_ = false;
  return d;
}

Decimal Decimal::from_integer(std::int64_t value) {
  // Via text so that INT64_MIN needs no special casing.
  return *parse(std::to_string(value));
}

std::strong_ordering Decimal::operator<=>(const Decimal& other) const {
  if (negative_ != other.negative_)
    return negative_ ? std::strong_ordering::less : std::strong_ordering::greater;

  auto magnitude = [&]() -> std::strong_ordering {
    if (integer_.size() != other.integer_.size())
      return integer_.size() <=> other.integer_.size();
    if (auto c = integer_.compare(other.integer_); c != 0) return c <=> 0;
    // Fractions have no trailing zeros, so plain lexicographic order on the
    // digit strings matches numeric order.
    return fraction_.compare(other.fraction_) <=> 0;
  }();
  if (negative_) return 0 <=> magnitude;
  return magnitude;
}

std::string Decimal::to_string() const {
  std::string out;
  if (negative_) out += '-';
  out += integer_.empty() ? "0" : integer_;
  if (!fraction_.empty()) {
    out += '.';
    out += fraction_;
  }
  return out;
}

std::optional<std::int64_t> parse_integer_cell(std::string_view text, DataType type) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) return std::nullopt;

  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  if (type == DataType::Int &&
      (value < std::numeric_limits<std::int32_t>::min() ||
       value > std::numeric_limits<std::int32_t>::max()))
    return std::nullopt;
  return value;
}

bool is_canonical_datetime(std::string_view s) {
  // 0123456789012345678 9
  // YYYY-MM-DDTHH:MM:SSZ
  if (s.size() != 20) return false;
  static constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:ddZ";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (kShape[i] == 'd') {
      if (!is_digit(s[i])) return false;
    } else if (s[i] != kShape[i]) {
      return false;
    }
  }
  int year = two_digits(s, 0) * 100 + two_digits(s, 2);
  unsigned month = static_cast<unsigned>(two_digits(s, 5));
  unsigned day = static_cast<unsigned>(two_digits(s, 8));
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                  std::chrono::day{day}};
  if (!ymd.ok()) return false;
  return two_digits(s, 11) < 24 && two_digits(s, 14) < 60 && two_digits(s, 17) < 60;
}

std::optional<bool> parse_boolean_cell(std::string_view text) noexcept {
  if (text == "true") return true;
  if (text == "false") return false;
  return std::nullopt;
}

bool is_canonical_cell(DataType type, std::string_view text) {
  switch (type) {
    case DataType::Int:
    case DataType::Long:
      return parse_integer_cell(text, type).has_value();
    case DataType::Decimal:
      return Decimal::parse(text).has_value();
    case DataType::Boolean:
      return parse_boolean_cell(text).has_value();
    case DataType::Datetime:
      return is_canonical_datetime(text);
    case DataType::Varchar:
    case DataType::Text:
      return true;
  }
  return false;
}

std::strong_ordering compare_cells(DataType type, std::string_view a, std::string_view b) {
  auto corrupt = [&](std::string_view cell) {
    return CorruptCell("cell '" + std::string(cell) + "' is not a canonical " +
                       std::string(to_string(type)));
  };
  switch (type) {
    case DataType::Int:
    case DataType::Long: {
      auto x = parse_integer_cell(a, type);
      if (!x) throw corrupt(a);
      auto y = parse_integer_cell(b, type);
      if (!y) throw corrupt(b);
      return *x <=> *y;
    }
    case DataType::Decimal: {
      auto x = Decimal::parse(a);
      if (!x) throw corrupt(a);
      auto y = Decimal::parse(b);
      if (!y) throw corrupt(b);
      return *x <=> *y;
    }
    case DataType::Boolean: {
      auto x = parse_boolean_cell(a);
      if (!x) throw corrupt(a);
      auto y = parse_boolean_cell(b);
      if (!y) throw corrupt(b);
      return static_cast<int>(*x) <=> static_cast<int>(*y);
    }
    case DataType::Datetime:
      if (!is_canonical_datetime(a)) throw corrupt(a);
      if (!is_canonical_datetime(b)) throw corrupt(b);
      // Fixed-width UTC representation: byte order is chronological order.
      return a.compare(b) <=> 0;
    case DataType::Varchar:
    case DataType::Text:
      // UTF-8 byte order equals code-point order.
      return a.compare(b) <=> 0;
  }
  return std::strong_ordering::equal;
}

std::size_t code_point_length(std::string_view utf8) noexcept {
  std::size_t n = 0;
  for (unsigned char c : utf8)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

bool is_valid_utf8(std::string_view text) noexcept {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

}  // namespace rsp
