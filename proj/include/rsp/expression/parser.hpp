#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/expression/ast.hpp"
#include "rsp/wire/error.hpp"

namespace rsp::expr {

/// BadExpression raised by the parsers, carrying the byte offset of the
/// offending token and the set of tokens that would have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Filter grammar:
///
///   expr       := or
///   or         := and ("OR" and)*
///   and        := not ("AND" not)*
///   not        := "NOT" not | primary
///   primary    := "(" expr ")" | comparison
///   comparison := fieldref cmpop literal
///               | fieldref "LIKE" string
///               | fieldref "IS" ["NOT"] "NULL"
///   fieldref   := ident ["." ident]
///   cmpop      := "=" | "<>" | "<" | "<=" | ">" | ">="
///   literal    := integer | decimal | string | "TRUE" | "FALSE"
///
/// Keywords are case-insensitive and reserved. Identifiers match
/// [A-Za-z_][A-Za-z0-9_]*; integers -?[0-9]+; decimals -?[0-9]+.[0-9]+;
/// strings are single-quoted with '' as the escape for a quote.
///
/// Returns std::nullopt for blank input, which means "match every row".
std::optional<FilterAst> parse_filter(std::string_view text);

/// Order grammar: orderlist := item ("," item)*; item := fieldref ["ASC"|"DESC"].
/// Blank input yields an empty spec. Duplicate field references are rejected.
OrderSpec parse_order(std::string_view text);

}  // namespace rsp::expr
