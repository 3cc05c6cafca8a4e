#include "rsp/expression/bound.hpp"

namespace rsp::expr {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string column_sql(const BoundColumn& column) {
  if (column.ref.table_qualifier)
    return quote_identifier(*column.ref.table_qualifier) + "." + quote_identifier(column.ref.column_name);
  return quote_identifier(column.ref.column_name);
}

void emit(const BoundFilter& filter, SqlFragment& out) {
  std::visit(Overloaded{
                 [&](const Box<BoundAnd>& n) {
                   out.text += "(";
                   emit(n->left, out);
                   out.text += " AND ";
                   emit(n->right, out);
                   out.text += ")";
                 },
                 [&](const Box<BoundOr>& n) {
                   out.text += "(";
                   emit(n->left, out);
                   out.text += " OR ";
                   emit(n->right, out);
                   out.text += ")";
                 },
                 [&](const Box<BoundNot>& n) {
                   out.text += "(NOT ";
                   emit(n->child, out);
                   out.text += ")";
                 },
                 [&](const BoundCompare& n) {
                   std::string col = column_sql(n.column);
                   out.text += "(" + col + " " + to_string(n.op) + " ? AND " + col + " IS NOT NULL)";
                   out.parameters.push_back(n.value);
                 },
                 [&](const BoundLike& n) {
                   std::string col = column_sql(n.column);
                   out.text += "(" + col + " LIKE ? AND " + col + " IS NOT NULL)";
                   out.parameters.emplace_back(n.pattern);
                 },
                 [&](const BoundIsNull& n) {
                   out.text += "(" + column_sql(n.column) + (n.negated ? " IS NOT NULL)" : " IS NULL)");
                 },
             },
             filter);
}

}  // namespace

std::string quote_identifier(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

SqlFragment to_parameterized_sql(const BoundFilter& filter) {
  SqlFragment out;
  emit(filter, out);
  return out;
}

}  // namespace rsp::expr
