#include "rsp/expression/bound.hpp"

#include "rsp/wire/error.hpp"

namespace rsp::expr {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

CorruptCell corrupt(const BoundColumn& column, std::string_view cell) {
  return CorruptCell("field '" + to_string(column.ref) + "' holds non-canonical " +
                     std::string(to_string(column.type)) + " cell '" + std::string(cell) + "'");
}

std::strong_ordering compare_to_value(const BoundColumn& column, std::string_view cell,
                                      const BoundValue& value) {
  switch (column.type) {
    case DataType::Int:
    case DataType::Long: {
      auto v = parse_integer_cell(cell, column.type);
      if (!v) throw corrupt(column, cell);
      return *v <=> std::get<std::int64_t>(value);
    }
    case DataType::Decimal: {
      auto v = Decimal::parse(cell);
      if (!v) throw corrupt(column, cell);
      return *v <=> std::get<Decimal>(value);
    }
    case DataType::Boolean: {
      auto v = parse_boolean_cell(cell);
      if (!v) throw corrupt(column, cell);
      return static_cast<int>(*v) <=> static_cast<int>(std::get<bool>(value));
    }
    case DataType::Datetime:
      if (!is_canonical_datetime(cell)) throw corrupt(column, cell);
      return cell.compare(std::get<std::string>(value)) <=> 0;
    case DataType::Varchar:
    case DataType::Text:
      return cell.compare(std::get<std::string>(value)) <=> 0;
  }
  return std::strong_ordering::equal;
}

bool holds(CompareOp op, std::strong_ordering c) {
  switch (op) {
    case CompareOp::Eq: return c == 0;
    case CompareOp::Ne: return c != 0;
    case CompareOp::Lt: return c < 0;
    case CompareOp::Le: return c <= 0;
    case CompareOp::Gt: return c > 0;
    case CompareOp::Ge: return c >= 0;
  }
  return false;
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? c : c & (0xFF >> (len + 1));
    for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

}  // namespace

bool like_match(std::string_view text_utf8, std::string_view pattern_utf8) {
  const std::u32string text = decode_utf8(text_utf8);
  const std::u32string pattern = decode_utf8(pattern_utf8);
  // Greedy matcher with backtracking to the most recent '%'.
  std::size_t t = 0, p = 0;
  std::size_t star = std::u32string::npos, resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == U'%') {
      star = p++;
      resume = t;
    } else if (p < pattern.size() && (pattern[p] == U'_' || pattern[p] == text[t])) {
      ++t;
      ++p;
    } else if (star != std::u32string::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == U'%') ++p;
  return p == pattern.size();
}

bool eval_filter(const BoundFilter& filter, std::span<const Cell> row) {
  return std::visit(
      Overloaded{
          [&](const Box<BoundAnd>& n) { return eval_filter(n->left, row) && eval_filter(n->right, row); },
          [&](const Box<BoundOr>& n) { return eval_filter(n->left, row) || eval_filter(n->right, row); },
          [&](const Box<BoundNot>& n) { return !eval_filter(n->child, row); },
          [&](const BoundCompare& n) {
            const Cell& cell = row[n.column.index];
            if (!cell) return false;
            return holds(n.op, compare_to_value(n.column, *cell, n.value));
          },
          [&](const BoundLike& n) {
            const Cell& cell = row[n.column.index];
            if (!cell) return false;
            return like_match(*cell, n.pattern);
          },
          [&](const BoundIsNull& n) {
            bool is_null = !row[n.column.index].has_value();
            return n.negated ? !is_null : is_null;
          },
      },
      filter);
}

std::weak_ordering compare_rows(const BoundOrder& order, std::span<const Cell> a,
                                std::span<const Cell> b) {
  for (const auto& item : order) {
    const Cell& x = a[item.column.index];
    const Cell& y = b[item.column.index];
    std::strong_ordering c = std::strong_ordering::equal;
    if (!x && !y) {
      c = std::strong_ordering::equal;
    } else if (!x) {
      c = std::strong_ordering::less;
    } else if (!y) {
      c = std::strong_ordering::greater;
    } else {
      try {
        c = compare_cells(item.column.type, *x, *y);
      } catch (const CorruptCell&) {
        throw corrupt(item.column, is_canonical_cell(item.column.type, *x) ? *y : *x);
      }
    }
    if (c != 0) {
      if (item.direction == Direction::Desc) return 0 <=> c;
      return c;
    }
  }
  return std::weak_ordering::equivalent;
}

}  // namespace rsp::expr
