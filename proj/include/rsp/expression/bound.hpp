#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rsp/expression/ast.hpp"
#include "rsp/wire/cell.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::expr {

/// A literal converted to the representation of the column it is compared
/// against.
using BoundValue = std::variant<std::int64_t, Decimal, std::string, bool>;

/// A resolved column: index into the planned field list plus its type.
struct BoundColumn {
  std::size_t index = 0;
  DataType type = DataType::Text;
  FieldRef ref;
  bool operator==(const BoundColumn&) const = default;
};

struct BoundCompare {
  BoundColumn column;
  CompareOp op = CompareOp::Eq;
  BoundValue value;
  bool operator==(const BoundCompare&) const = default;
};

struct BoundLike {
  BoundColumn column;
  std::string pattern;
  bool operator==(const BoundLike&) const = default;
};

struct BoundIsNull {
  BoundColumn column;
  bool negated = false;
  bool operator==(const BoundIsNull&) const = default;
};

struct BoundAnd;
struct BoundOr;
struct BoundNot;

using BoundFilter = std::variant<Box<BoundAnd>, Box<BoundOr>, Box<BoundNot>, BoundCompare,
                                 BoundLike, BoundIsNull>;

struct BoundAnd {
  BoundFilter left;
  BoundFilter right;
  bool operator==(const BoundAnd&) const = default;
};

struct BoundOr {
  BoundFilter left;
  BoundFilter right;
  bool operator==(const BoundOr&) const = default;
};

struct BoundNot {
  BoundFilter child;
  bool operator==(const BoundNot&) const = default;
};

struct BoundOrderItem {
  BoundColumn column;
  Direction direction = Direction::Asc;
  bool operator==(const BoundOrderItem&) const = default;
};

using BoundOrder = std::vector<BoundOrderItem>;

/// Resolves field references against a planned field list and type-checks
/// every comparison.
///
/// Unqualified names match base-table (non-joined) fields only. `T.C` matches
/// any field with Table == T and Name == C, which is how joined display
/// fields are addressed. No match or more than one match raises
/// Error(UnknownField); operator/type or literal/type mismatches raise
/// Error(BadExpression).
BoundFilter bind(const FilterAst& ast, std::span<const Field> fields);
BoundOrder bind(const OrderSpec& order, std::span<const Field> fields);

/// Two-valued evaluation: Compare and Like on a NULL cell are false, IsNull
/// tests presence. Throws CorruptCell on a non-canonical cell.
bool eval_filter(const BoundFilter& filter, std::span<const Cell> row);

/// Lexicographic over the order items. NULL sorts first under ASC and last
/// under DESC. Not a tiebreaker: equal rows compare equal.
std::weak_ordering compare_rows(const BoundOrder& order, std::span<const Cell> a,
                                std::span<const Cell> b);

/// Case-sensitive LIKE over code points: `%` matches any run, `_` exactly one
/// code point. No escape character.
bool like_match(std::string_view text, std::string_view pattern);

/// Parameterized SQL with positional `?` placeholders.
struct SqlFragment {
  std::string text;
  std::vector<BoundValue> parameters;
  bool operator==(const SqlFragment&) const = default;
};

/// Emits a WHERE-clause fragment equivalent to eval_filter under standard SQL.
/// Each Compare and Like is guarded with IS NOT NULL so that NULL cells yield
/// false rather than unknown. Literals only ever appear in `parameters`.
SqlFragment to_parameterized_sql(const BoundFilter& filter);

/// `"name"` with embedded double quotes doubled.
std::string quote_identifier(std::string_view name);

}  // namespace rsp::expr
