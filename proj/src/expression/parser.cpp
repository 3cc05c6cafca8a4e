#include "rsp/expression/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace rsp::expr {

namespace {

enum class TokenKind {
  Identifier,
  Integer,
  Decimal,
  String,
  Keyword,
  Operator,
  LParen,
  RParen,
  Dot,
  Comma,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // keywords upper-cased; strings unescaped
  std::size_t position = 0;
};

constexpr std::array<std::string_view, 10> kKeywords{"AND", "OR",   "NOT",   "LIKE", "IS",
                                                     "NULL", "TRUE", "FALSE", "ASC",  "DESC"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_part(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::String: return "string literal";
    case TokenKind::Integer:
    case TokenKind::Decimal: return "number '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::End, "", pos_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::size_t at, std::vector<std::string> expected, std::string found) {
    throw SyntaxError(at, std::move(expected), found);
  }

  Token next() {
    std::size_t start = pos_;
    char c = text_[pos_];
    if (ident_start(c)) {
      while (pos_ < text_.size() && ident_part(text_[pos_])) ++pos_;
      std::string_view word = text_.substr(start, pos_ - start);
      std::string up = upper(word);
      if (std::find(kKeywords.begin(), kKeywords.end(), up) != kKeywords.end())
        return {TokenKind::Keyword, up, start};
      return {TokenKind::Identifier, std::string(word), start};
    }
    if (digit(c) || (c == '-' && pos_ + 1 < text_.size() && digit(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
      TokenKind kind = TokenKind::Integer;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        if (pos_ + 1 >= text_.size() || !digit(text_[pos_ + 1]))
          fail(pos_ + 1, {"digit"}, "malformed decimal literal");
        ++pos_;
        while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
        kind = TokenKind::Decimal;
      }
      if (pos_ < text_.size() && ident_part(text_[pos_]))
        fail(pos_, {"operator", "whitespace"}, "'" + std::string(1, text_[pos_]) + "'");
      return {kind, std::string(text_.substr(start, pos_ - start)), start};
    }
    if (c == '\'') {
      std::string value;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) fail(start, {"closing quote"}, "unterminated string literal");
        char s = text_[pos_++];
        if (s == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            value += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        value += s;
      }
      return {TokenKind::String, std::move(value), start};
    }
    ++pos_;
    switch (c) {
      case '(': return {TokenKind::LParen, "(", start};
      case ')': return {TokenKind::RParen, ")", start};
      case '.': return {TokenKind::Dot, ".", start};
      case ',': return {TokenKind::Comma, ",", start};
      case '=': return {TokenKind::Operator, "=", start};
      case '<':
        if (pos_ < text_.size() && (text_[pos_] == '=' || text_[pos_] == '>'))
          return {TokenKind::Operator, std::string{'<', text_[pos_++]}, start};
        return {TokenKind::Operator, "<", start};
      case '>':
        if (pos_ < text_.size() && text_[pos_] == '=') {
          ++pos_;
          return {TokenKind::Operator, ">=", start};
        }
        return {TokenKind::Operator, ">", start};
      default:
        break;
    }
    fail(start, {}, "unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool at_end() const { return peek().kind == TokenKind::End; }

  FilterAst parse_filter() {
    FilterAst ast = parse_or();
    expect_end({"AND", "OR"});
    return ast;
  }

  OrderSpec parse_order() {
    OrderSpec order;
    for (;;) {
      std::size_t at = peek().position;
      OrderItem item{parse_fieldref(), Direction::Asc};
      if (accept_keyword("ASC")) {
        item.direction = Direction::Asc;
      } else if (accept_keyword("DESC")) {
        item.direction = Direction::Desc;
      }
      for (const auto& prior : order) {
        if (prior.field == item.field)
          throw SyntaxError(at, {}, "duplicate order field '" + to_string(item.field) + "'");
      }
      order.push_back(std::move(item));
      if (peek().kind == TokenKind::Comma) {
        ++pos_;
        continue;
      }
      expect_end({",", "ASC", "DESC"});
      return order;
    }
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().position, std::move(expected), describe(peek()));
  }

  bool accept_keyword(std::string_view kw) {
    if (peek().kind == TokenKind::Keyword && peek().text == kw) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_end(std::vector<std::string> continuation) const {
    if (at_end()) return;
    continuation.push_back("end of input");
    fail(std::move(continuation));
  }

  FilterAst parse_or() {
    FilterAst left = parse_and();
    while (accept_keyword("OR")) left = make_or(std::move(left), parse_and());
    return left;
  }

  FilterAst parse_and() {
    FilterAst left = parse_not();
    while (accept_keyword("AND")) left = make_and(std::move(left), parse_not());
    return left;
  }

  FilterAst parse_not() {
    if (accept_keyword("NOT")) return make_not(parse_not());
    return parse_primary();
  }

  FilterAst parse_primary() {
    if (peek().kind == TokenKind::LParen) {
      ++pos_;
      FilterAst inner = parse_or();
      if (peek().kind != TokenKind::RParen) fail({"AND", "OR", ")"});
      ++pos_;
      return inner;
    }
    if (peek().kind != TokenKind::Identifier) fail({"NOT", "(", "identifier"});
    return parse_comparison();
  }

  FilterAst parse_comparison() {
    FieldRef field = parse_fieldref();
    const Token& t = peek();
    if (t.kind == TokenKind::Operator) {
      CompareOp op = parse_cmpop(t.text);
      ++pos_;
      return Compare{std::move(field), op, parse_literal()};
    }
    if (accept_keyword("LIKE")) {
      if (peek().kind != TokenKind::String) fail({"string literal"});
      return Like{std::move(field), tokens_[pos_++].text};
    }
    if (accept_keyword("IS")) {
      bool negated = accept_keyword("NOT");
      if (!accept_keyword("NULL")) fail(negated ? std::vector<std::string>{"NULL"}
                                                : std::vector<std::string>{"NOT", "NULL"});
      return IsNull{std::move(field), negated};
    }
    fail({"=", "<>", "<", "<=", ">", ">=", "LIKE", "IS"});
  }

  static CompareOp parse_cmpop(std::string_view op) {
    if (op == "=") return CompareOp::Eq;
    if (op == "<>") return CompareOp::Ne;
    if (op == "<") return CompareOp::Lt;
    if (op == "<=") return CompareOp::Le;
    if (op == ">") return CompareOp::Gt;
    return CompareOp::Ge;
  }

  Literal parse_literal() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer: {
        std::int64_t v = 0;
        auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{} || end != t.text.data() + t.text.size())
          throw SyntaxError(t.position, {"64-bit integer"}, "integer literal out of range");
        ++pos_;
        return IntegerLiteral{v};
      }
      case TokenKind::Decimal:
        ++pos_;
        return DecimalLiteral{t.text};
      case TokenKind::String:
        ++pos_;
        return StringLiteral{t.text};
      case TokenKind::Keyword:
        if (t.text == "TRUE" || t.text == "FALSE") {
          ++pos_;
          return BooleanLiteral{t.text == "TRUE"};
        }
        if (t.text == "NULL")
          throw SyntaxError(t.position, {"literal"},
                            "NULL cannot be compared; use IS NULL or IS NOT NULL");
        break;
      default:
        break;
    }
    fail({"integer", "decimal", "string literal", "TRUE", "FALSE"});
  }

  FieldRef parse_fieldref() {
    if (peek().kind != TokenKind::Identifier) fail({"identifier"});
    std::string first = tokens_[pos_++].text;
    if (peek().kind == TokenKind::Dot) {
      ++pos_;
      if (peek().kind != TokenKind::Identifier) fail({"identifier"});
      return FieldRef{std::move(first), tokens_[pos_++].text};
    }
    return FieldRef{std::nullopt, std::move(first)};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

std::string syntax_message(std::size_t position, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::string msg = "syntax error at position " + std::to_string(position) + ": " + found;
  if (!expected.empty()) {
    msg += "; expected one of:";
    for (const auto& e : expected) msg += " " + e;
  }
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error(ErrorCode::BadExpression, syntax_message(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

std::optional<FilterAst> parse_filter(std::string_view text) {
  if (blank(text)) return std::nullopt;
  Parser parser(Lexer(text).tokenize());
  return parser.parse_filter();
}

OrderSpec parse_order(std::string_view text) {
  if (blank(text)) return {};
  Parser parser(Lexer(text).tokenize());
  return parser.parse_order();
}

}  // namespace rsp::expr
