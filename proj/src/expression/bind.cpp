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

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorCode::BadExpression, message); }

BoundColumn resolve(const FieldRef& ref, std::span<const Field> fields) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const Field& f = fields[i];
    bool match = ref.table_qualifier ? (f.table == *ref.table_qualifier && f.name == ref.column_name)
                                     : (!f.is_joined && f.name == ref.column_name);
    if (!match) continue;
    if (found)
      throw Error(ErrorCode::UnknownField, "field reference '" + to_string(ref) + "' is ambiguous");
    found = i;
  }
  if (!found) throw Error(ErrorCode::UnknownField, "unknown field '" + to_string(ref) + "'");
  auto type = parse_data_type(fields[*found].data_type);
  if (!type)
    bad("field '" + to_string(ref) + "' has unsupported data type '" + fields[*found].data_type + "'");
  return BoundColumn{*found, *type, ref};
}

std::string literal_kind(const Literal& l) {
  return std::visit(Overloaded{
                        [](const IntegerLiteral&) { return "integer"; },
                        [](const DecimalLiteral&) { return "decimal"; },
                        [](const StringLiteral&) { return "string"; },
                        [](const BooleanLiteral&) { return "boolean"; },
                        [](const NullLiteral&) { return "NULL"; },
                    },
                    l);
}

BoundValue bind_literal(const BoundColumn& column, const Literal& literal) {
  auto mismatch = [&]() -> BoundValue {
    bad("cannot compare " + std::string(to_string(column.type)) + " field '" +
        to_string(column.ref) + "' with a " + literal_kind(literal) + " literal");
  };
  switch (column.type) {
    case DataType::Int:
    case DataType::Long:
      if (auto* i = std::get_if<IntegerLiteral>(&literal)) return i->value;
      return mismatch();
    case DataType::Decimal:
      if (auto* i = std::get_if<IntegerLiteral>(&literal)) return Decimal::from_integer(i->value);
      if (auto* d = std::get_if<DecimalLiteral>(&literal)) {
        auto value = Decimal::parse(d->text);
        if (!value) bad("malformed decimal literal '" + d->text + "'");
        return *value;
      }
      return mismatch();
    case DataType::Varchar:
    case DataType::Text:
      if (auto* s = std::get_if<StringLiteral>(&literal)) return s->value;
      return mismatch();
    case DataType::Datetime:
      if (auto* s = std::get_if<StringLiteral>(&literal)) {
        if (!is_canonical_datetime(s->value))
          bad("datetime literal for '" + to_string(column.ref) +
              "' must have the form YYYY-MM-DDTHH:MM:SSZ");
        return s->value;
      }
      return mismatch();
    case DataType::Boolean:
      if (auto* b = std::get_if<BooleanLiteral>(&literal)) return b->value;
      return mismatch();
  }
  return mismatch();
}

bool ordering_op(CompareOp op) { return op != CompareOp::Eq && op != CompareOp::Ne; }

BoundFilter bind_node(const FilterAst& ast, std::span<const Field> fields) {
  return std::visit(
      Overloaded{
          [&](const Box<And>& n) -> BoundFilter {
            return Box<BoundAnd>(BoundAnd{bind_node(n->left, fields), bind_node(n->right, fields)});
          },
          [&](const Box<Or>& n) -> BoundFilter {
            return Box<BoundOr>(BoundOr{bind_node(n->left, fields), bind_node(n->right, fields)});
          },
          [&](const Box<Not>& n) -> BoundFilter {
            return Box<BoundNot>(BoundNot{bind_node(n->child, fields)});
          },
          [&](const Compare& n) -> BoundFilter {
            BoundColumn column = resolve(n.field, fields);
            if (ordering_op(n.op) && column.type == DataType::Boolean)
              bad("operator " + to_string(n.op) + " is not defined for boolean field '" +
                  to_string(n.field) + "'");
            BoundValue value = bind_literal(column, n.literal);
            return BoundCompare{std::move(column), n.op, std::move(value)};
          },
          [&](const Like& n) -> BoundFilter {
            BoundColumn column = resolve(n.field, fields);
            if (!is_character_type(column.type))
              bad("LIKE requires a character field; '" + to_string(n.field) + "' is " +
                  std::string(to_string(column.type)));
            return BoundLike{std::move(column), n.pattern};
          },
          [&](const IsNull& n) -> BoundFilter {
            return BoundIsNull{resolve(n.field, fields), n.negated};
          },
      },
      ast);
}

}  // namespace

BoundFilter bind(const FilterAst& ast, std::span<const Field> fields) {
  return bind_node(ast, fields);
}

BoundOrder bind(const OrderSpec& order, std::span<const Field> fields) {
  BoundOrder out;
  out.reserve(order.size());
  for (const auto& item : order) out.push_back({resolve(item.field, fields), item.direction});
  return out;
}

}  // namespace rsp::expr
