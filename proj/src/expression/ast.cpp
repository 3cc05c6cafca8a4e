#include "rsp/expression/ast.hpp"

#include <algorithm>

namespace rsp::expr {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

}  // namespace

std::string to_string(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "<>";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

std::string to_string(const FieldRef& ref) {
  if (ref.table_qualifier) return *ref.table_qualifier + "." + ref.column_name;
  return ref.column_name;
}

std::string to_string(const Literal& literal) {
  return std::visit(Overloaded{
                        [](const IntegerLiteral& l) { return std::to_string(l.value); },
                        [](const DecimalLiteral& l) { return l.text; },
                        [](const StringLiteral& l) { return quote(l.value); },
                        [](const BooleanLiteral& l) { return std::string(l.value ? "TRUE" : "FALSE"); },
                        [](const NullLiteral&) { return std::string("NULL"); },
                    },
                    literal);
}

std::string to_string(const FilterAst& ast) {
  return std::visit(
      Overloaded{
          [](const Box<And>& n) { return "(" + to_string(n->left) + " AND " + to_string(n->right) + ")"; },
          [](const Box<Or>& n) { return "(" + to_string(n->left) + " OR " + to_string(n->right) + ")"; },
          [](const Box<Not>& n) { return "NOT " + to_string(n->child); },
          [](const Compare& n) {
            return to_string(n.field) + " " + to_string(n.op) + " " + to_string(n.literal);
          },
          [](const Like& n) { return to_string(n.field) + " LIKE " + quote(n.pattern); },
          [](const IsNull& n) {
            return to_string(n.field) + (n.negated ? " IS NOT NULL" : " IS NULL");
          },
      },
      ast);
}

std::string to_string(const OrderSpec& order) {
  std::string out;
  for (const auto& item : order) {
    if (!out.empty()) out += ", ";
    out += to_string(item.field);
    out += item.direction == Direction::Asc ? " ASC" : " DESC";
  }
  return out;
}

int depth(const FilterAst& ast) {
  return std::visit(Overloaded{
                        [](const Box<And>& n) { return 1 + std::max(depth(n->left), depth(n->right)); },
                        [](const Box<Or>& n) { return 1 + std::max(depth(n->left), depth(n->right)); },
                        [](const Box<Not>& n) { return 1 + depth(n->child); },
                        [](const auto&) { return 1; },
                    },
                    ast);
}

}  // namespace rsp::expr
