#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsp/expression/box.hpp"

namespace rsp::expr {

/// `Column` or `Table.Column`.
struct FieldRef {
  std::optional<std::string> table_qualifier;
  std::string column_name;

  bool operator==(const FieldRef&) const = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct IntegerLiteral {
  std::int64_t value = 0;
  bool operator==(const IntegerLiteral&) const = default;
};

/// Kept as written (`-?digits.digits`); exact value semantics live in
/// rsp::Decimal.
struct DecimalLiteral {
  std::string text;
  bool operator==(const DecimalLiteral&) const = default;
};

struct StringLiteral {
  std::string value;
  bool operator==(const StringLiteral&) const = default;
};

struct BooleanLiteral {
  bool value = false;
  bool operator==(const BooleanLiteral&) const = default;
};

struct NullLiteral {
  bool operator==(const NullLiteral&) const = default;
};

using Literal =
    std::variant<IntegerLiteral, DecimalLiteral, StringLiteral, BooleanLiteral, NullLiteral>;

/// Compare never carries a NullLiteral; the parser turns `x = NULL` into a
/// syntax error pointing at IS [NOT] NULL.
struct Compare {
  FieldRef field;
  CompareOp op = CompareOp::Eq;
  Literal literal;
  bool operator==(const Compare&) const = default;
};

struct Like {
  FieldRef field;
  std::string pattern;
  bool operator==(const Like&) const = default;
};

struct IsNull {
  FieldRef field;
  bool negated = false;
  bool operator==(const IsNull&) const = default;
};

struct And;
struct Or;
struct Not;

using FilterAst = std::variant<Box<And>, Box<Or>, Box<Not>, Compare, Like, IsNull>;

struct And {
  FilterAst left;
  FilterAst right;
  bool operator==(const And&) const = default;
};

struct Or {
  FilterAst left;
  FilterAst right;
  bool operator==(const Or&) const = default;
};

struct Not {
  FilterAst child;
  bool operator==(const Not&) const = default;
};

inline FilterAst make_and(FilterAst l, FilterAst r) { return Box<And>(And{std::move(l), std::move(r)}); }
inline FilterAst make_or(FilterAst l, FilterAst r) { return Box<Or>(Or{std::move(l), std::move(r)}); }
inline FilterAst make_not(FilterAst c) { return Box<Not>(Not{std::move(c)}); }

enum class Direction { Asc, Desc };

struct OrderItem {
  FieldRef field;
  Direction direction = Direction::Asc;
  bool operator==(const OrderItem&) const = default;
};

/// Empty means provider-default (insertion) order.
using OrderSpec = std::vector<OrderItem>;

std::string to_string(CompareOp op);
std::string to_string(const FieldRef& ref);
std::string to_string(const Literal& literal);

/// Canonical printer. Binary nodes are always parenthesized, so the output
/// re-parses to an equal tree.
std::string to_string(const FilterAst& ast);
std::string to_string(const OrderSpec& order);

/// Nesting depth: leaves are 1.
int depth(const FilterAst& ast);

}  // namespace rsp::expr
