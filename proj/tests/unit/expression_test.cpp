#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "oracle.hpp"
#include "rsp/expression/bound.hpp"
#include "rsp/expression/parser.hpp"

namespace rsp::expr {
namespace {

FieldRef ref(std::string name) { return FieldRef{std::nullopt, std::move(name)}; }

Field field(std::string table, std::string name, std::string type, bool joined = false) {
  Field f;
  f.data_type = std::move(type);
  f.table = std::move(table);
  f.name = std::move(name);
  f.id = f.table + "." + f.name;
  f.is_joined = joined;
  f.is_display_field = joined;
  f.is_nullable = true;
  f.title = f.name;
  return f;
}

// Id, Name, Age, Dept (FK), Department.Name (joined)
std::vector<Field> employee_fields() {
  return {field("Employee", "Id", "int"), field("Employee", "Name", "varchar"), field("Employee", "Age", "int"),
          field("Employee", "Dept", "int"), field("Department", "Name", "varchar", true)};
}

std::vector<Row> employee_rows() {
  return {{"1", "Alice", "34", "1", "Sales"},        {"2", "Bob", "28", "2", "Engineering"},
          {"3", "Carol", std::nullopt, "1", "Sales"}, {"4", "Dan", "45", std::nullopt, std::nullopt},
          {"5", "Eve", "31", "2", "Engineering"},    {"6", "O'Brien", "52", "3", "Marketing"}};
}

std::vector<std::string> ids(const std::vector<Row>& rows) {
  std::vector<std::string> out;
  for (const Row& r : rows) out.push_back(*r[0]);
  return out;
}

BoundFilter bind_text(std::string_view text, const std::vector<Field>& fields) {
  return expr::bind(*parse_filter(text), fields);
}

std::vector<Row> select(std::string_view text, const std::vector<Field>& fields, const std::vector<Row>& rows) {
  BoundFilter f = bind_text(text, fields);
  std::vector<Row> out;
  for (const Row& r : rows)
    if (eval_filter(f, r)) out.push_back(r);
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::AuthFailed;
}

// ---- parse_filter ----

TEST(ParseFilter, AndOfCompareAndLike) {
  auto ast = parse_filter("Age >= 30 AND Name LIKE 'A%'");
  FilterAst expected = make_and(Compare{ref("Age"), CompareOp::Ge, IntegerLiteral{30}}, Like{ref("Name"), "A%"});
  EXPECT_EQ(*ast, expected);
}

TEST(ParseFilter, NotBindsTighterThanOr) {
  FilterAst expected = make_or(make_not(Compare{ref("A"), CompareOp::Eq, IntegerLiteral{1}}),
                               Compare{ref("B"), CompareOp::Eq, IntegerLiteral{2}});
  EXPECT_EQ(*parse_filter("NOT A = 1 OR B = 2"), expected);
}

TEST(ParseFilter, AndBindsTighterThanOr) {
  FilterAst a = Compare{ref("A"), CompareOp::Eq, IntegerLiteral{1}};
  FilterAst b = Compare{ref("B"), CompareOp::Eq, IntegerLiteral{2}};
  FilterAst c = Compare{ref("C"), CompareOp::Eq, IntegerLiteral{3}};
  EXPECT_EQ(*parse_filter("A = 1 OR B = 2 AND C = 3"), make_or(a, make_and(b, c)));
  EXPECT_EQ(*parse_filter("(A = 1 OR B = 2) AND C = 3"), make_and(make_or(a, b), c));
  EXPECT_EQ(*parse_filter("A = 1 AND B = 2 AND C = 3"), make_and(make_and(a, b), c));
}

TEST(ParseFilter, QuoteEscape) {
  EXPECT_EQ(*parse_filter("Name = 'O''Brien'"), FilterAst(Compare{ref("Name"), CompareOp::Eq, StringLiteral{"O'Brien"}}));
}

TEST(ParseFilter, LiteralsAndKeywords) {
  EXPECT_EQ(*parse_filter("x <> -5"), FilterAst(Compare{ref("x"), CompareOp::Ne, IntegerLiteral{-5}}));
  EXPECT_EQ(*parse_filter("x < 1.50"), FilterAst(Compare{ref("x"), CompareOp::Lt, DecimalLiteral{"1.50"}}));
  EXPECT_EQ(*parse_filter("x = true"), FilterAst(Compare{ref("x"), CompareOp::Eq, BooleanLiteral{true}}));
  EXPECT_EQ(*parse_filter("x is not null"), FilterAst(IsNull{ref("x"), true}));
  EXPECT_EQ(*parse_filter("T.x IS NULL"), FilterAst(IsNull{FieldRef{"T", "x"}, false}));
  EXPECT_EQ(*parse_filter("x<=1"), FilterAst(Compare{ref("x"), CompareOp::Le, IntegerLiteral{1}}));
  EXPECT_EQ(*parse_filter("_a9 >= ''"), FilterAst(Compare{ref("_a9"), CompareOp::Ge, StringLiteral{""}}));
}

TEST(ParseFilter, BlankMeansMatchAll) {
  EXPECT_FALSE(parse_filter("").has_value());
  EXPECT_FALSE(parse_filter("  \t ").has_value());
}

TEST(ParseFilter, SyntaxErrorsCarryPositionAndExpectation) {
  try {
    parse_filter("Age >= ");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadExpression);
    EXPECT_EQ(e.position(), 7u);
    EXPECT_FALSE(e.expected().empty());
  }
  try {
    parse_filter("Age = 1 Name = 2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 8u);
    auto& exp = e.expected();
    EXPECT_NE(std::find(exp.begin(), exp.end(), "AND"), exp.end());
  }
}

TEST(ParseFilter, Rejections) {
  for (const char* bad : {"Age = NULL", "Age", "Age = 'x", "(Age = 1", "Age = 1)", "Age == 1", "Age LIKE 3",
                          "AND = 1", "1 = Age", "Age = 1.", "Age = .5", "Age = 1 AND", "NOT",
                          "Age = 99999999999999999999", "a.b.c = 1", "Age ! 1", "Age = 1e5"}) {
    EXPECT_THROW(parse_filter(bad), SyntaxError) << bad;
  }
}

// ---- parse_order ----

TEST(ParseOrder, DefaultAscending) {
  OrderSpec expected = {{ref("Name"), Direction::Desc}, {ref("Id"), Direction::Asc}};
  EXPECT_EQ(parse_order("Name DESC, Id"), expected);
  EXPECT_EQ(parse_order("name desc,Id asc"), (OrderSpec{{ref("name"), Direction::Desc}, {ref("Id"), Direction::Asc}}));
}

TEST(ParseOrder, Empty) { EXPECT_TRUE(parse_order("").empty()); }

TEST(ParseOrder, Duplicate) {
  EXPECT_EQ(code_of([] { parse_order("Name, Name DESC"); }), ErrorCode::BadExpression);
  EXPECT_NO_THROW(parse_order("Name, Department.Name"));
}

TEST(ParseOrder, Rejections) {
  for (const char* bad : {"Name,", ",Name", "Name ASC DESC", "Name Id", "ASC", "Name = 1"})
    EXPECT_THROW(parse_order(bad), SyntaxError) << bad;
}

// ---- bind ----

TEST(Bind, CompareOnInt) {
  auto fields = employee_fields();
  BoundFilter b = bind_text("Age > 30", fields);
  const auto& c = std::get<BoundCompare>(b);
  EXPECT_EQ(c.column.index, 2u);
  EXPECT_EQ(c.column.type, DataType::Int);
  EXPECT_EQ(std::get<std::int64_t>(c.value), 30);
}

TEST(Bind, LikeOnIntRejected) {
  auto fields = employee_fields();
  EXPECT_EQ(code_of([&] { bind_text("Age LIKE '3%'", fields); }), ErrorCode::BadExpression);
}

TEST(Bind, QualifiedJoinedField) {
  auto fields = employee_fields();
  BoundFilter b = bind_text("Department.Name = 'Sales'", fields);
  EXPECT_EQ(std::get<BoundCompare>(b).column.index, 4u);
  // Unqualified Name resolves to the base table, never the joined column.
  EXPECT_EQ(std::get<BoundCompare>(bind_text("Name = 'Sales'", fields)).column.index, 1u);
  EXPECT_EQ(std::get<BoundCompare>(bind_text("Employee.Name = 'Sales'", fields)).column.index, 1u);
}

TEST(Bind, UnknownAndAmbiguousFields) {
  auto fields = employee_fields();
  EXPECT_EQ(code_of([&] { bind_text("Salary > 1", fields); }), ErrorCode::UnknownField);
  EXPECT_EQ(code_of([&] { bind_text("Office.Name = 'x'", fields); }), ErrorCode::UnknownField);
  // Two joined fields pointing at the same display column.
  fields.push_back(field("Department", "Name", "varchar", true));
  fields.back().id += "#2";
  EXPECT_EQ(code_of([&] { bind_text("Department.Name = 'x'", fields); }), ErrorCode::UnknownField);
  EXPECT_EQ(code_of([&] { expr::bind(parse_order("Department.Name"), fields); }), ErrorCode::UnknownField);
}

TEST(Bind, LiteralTypeRules) {
  std::vector<Field> fields = {field("T", "i", "int"),      field("T", "l", "long"),    field("T", "d", "decimal"),
                               field("T", "v", "varchar"),  field("T", "t", "text"),    field("T", "b", "boolean"),
                               field("T", "dt", "datetime")};
  for (const char* ok : {"i = 1", "l = -9000000000", "d = 1", "d = 1.25", "v = 'x'", "t < 'x'", "b = TRUE",
                         "b <> false", "dt > '2020-01-01T00:00:00Z'", "v LIKE '%'", "t LIKE ''"})
    EXPECT_NO_THROW(bind_text(ok, fields)) << ok;
  for (const char* bad : {"i = 1.5", "i = 'x'", "i = TRUE", "d = 'x'", "v = 1", "b = 1",
                          "b < TRUE", "dt = 5", "dt = '2020-01-01'", "dt LIKE '2020%'", "b LIKE 't%'", "d LIKE '1%'"})
    EXPECT_EQ(code_of([&] { bind_text(bad, fields); }), ErrorCode::BadExpression) << bad;
}

// ---- eval_filter ----

TEST(Eval, NumericCompare) {
  auto fields = employee_fields();
  BoundFilter f = bind_text("Age > 30", fields);
  Row row = employee_rows()[0];
  row[2] = "31";
  EXPECT_TRUE(eval_filter(f, row));
  row[2] = std::nullopt;
  EXPECT_FALSE(eval_filter(f, row));
  row[2] = "4";  // numeric, not lexicographic
  EXPECT_FALSE(eval_filter(f, row));
}

TEST(Eval, NullNeverMatchesComparison) {
  auto fields = employee_fields();
  Row row = employee_rows()[2];  // Carol, Age null
  EXPECT_FALSE(eval_filter(bind_text("Age = 1", fields), row));
  EXPECT_FALSE(eval_filter(bind_text("Age <> 1", fields), row));
  EXPECT_TRUE(eval_filter(bind_text("NOT Age = 1", fields), row));
  EXPECT_TRUE(eval_filter(bind_text("Age IS NULL", fields), row));
  EXPECT_FALSE(eval_filter(bind_text("Age IS NOT NULL", fields), row));
}

TEST(Eval, CorruptCellSignalsProviderBug) {
  auto fields = employee_fields();
  Row row = employee_rows()[0];
  row[2] = "thirty";
  EXPECT_THROW(eval_filter(bind_text("Age > 30", fields), row), CorruptCell);
}

// Expected ids computed by hand from the six rows above: ages 34,45,31,52
// exceed 30; Dan's department is null.
TEST(Eval, SixRowFixtureAgainstOracle) {
  auto fields = employee_fields();
  auto rows = employee_rows();
  const char* text = "Age > 30 OR Dept IS NULL";
  auto got = select(text, fields, rows);
  EXPECT_EQ(ids(got), ids(testing::oracle_select(parse_filter(text), fields, rows)));
  EXPECT_EQ(ids(got), (std::vector<std::string>{"1", "4", "5", "6"}));
  EXPECT_EQ(ids(select("Department.Name = 'Sales'", fields, rows)), (std::vector<std::string>{"1", "3"}));
  EXPECT_EQ(ids(select("Name = 'O''Brien'", fields, rows)), (std::vector<std::string>{"6"}));
  EXPECT_EQ(ids(select("Name < 'C'", fields, rows)), (std::vector<std::string>{"1", "2"}));
}

TEST(Like, Semantics) {
  EXPECT_TRUE(like_match("Alice", "A%"));
  EXPECT_TRUE(like_match("Alice", "%"));
  EXPECT_TRUE(like_match("", "%"));
  EXPECT_FALSE(like_match("", "_"));
  EXPECT_TRUE(like_match("Alice", "_lic_"));
  EXPECT_FALSE(like_match("alice", "A%")) << "case-sensitive";
  EXPECT_TRUE(like_match("a%b", "a%b"));
  EXPECT_TRUE(like_match("%c", "%"));
  EXPECT_TRUE(like_match("_x", "%x"));
  EXPECT_TRUE(like_match("abcbc", "%bc"));
  EXPECT_TRUE(like_match("Řeka", "_eka")) << "_ matches one code point";
  EXPECT_FALSE(like_match("Řeka", "__eka"));
  EXPECT_TRUE(like_match("x𝄞y", "x_y"));
  EXPECT_TRUE(like_match("aXbXc", "a%b%c"));
  EXPECT_FALSE(like_match("ab", "a%b%c"));
}

// ---- compare_rows ----

TEST(CompareRows, NullsFirstAndReversal) {
  auto fields = employee_fields();
  BoundOrder asc = expr::bind(parse_order("Name"), fields);
  BoundOrder desc = expr::bind(parse_order("Name DESC"), fields);
  Row a = employee_rows()[0], b = employee_rows()[1];
  a[1] = std::nullopt;
  b[1] = "A";
  EXPECT_EQ(compare_rows(asc, a, b), std::weak_ordering::less);
  EXPECT_EQ(compare_rows(desc, a, b), std::weak_ordering::greater);
  a[1] = "A";
  b[1] = "B";
  EXPECT_EQ(compare_rows(desc, a, b), std::weak_ordering::greater);
  EXPECT_EQ(compare_rows(BoundOrder{}, a, b), std::weak_ordering::equivalent);
}

TEST(CompareRows, SixRowSortAgainstOracle) {
  auto fields = employee_fields();
  auto rows = employee_rows();
  OrderSpec spec = parse_order("Dept ASC, Age DESC");
  BoundOrder order = expr::bind(spec, fields);
  auto sorted = rows;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const Row& a, const Row& b) { return compare_rows(order, a, b) < 0; });
  EXPECT_EQ(ids(sorted), ids(testing::oracle_sort(spec, fields, rows)));
  // Dan (null dept); dept 1: Alice 34, Carol null; dept 2: Eve 31, Bob 28; dept 3: O'Brien.
  EXPECT_EQ(ids(sorted), (std::vector<std::string>{"4", "1", "3", "5", "2", "6"}));
}

// ---- SQL ----

TEST(Sql, CompareIsNullGuarded) {
  auto fields = employee_fields();
  SqlFragment s = to_parameterized_sql(bind_text("Age > 30", fields));
  EXPECT_EQ(s.text, R"(("Age" > ? AND "Age" IS NOT NULL))");
  ASSERT_EQ(s.parameters.size(), 1u);
  EXPECT_EQ(std::get<std::int64_t>(s.parameters[0]), 30);
}

TEST(Sql, LikeIsNullGuarded) {
  auto fields = employee_fields();
  SqlFragment s = to_parameterized_sql(bind_text("Name LIKE 'A%'", fields));
  EXPECT_EQ(s.text, R"(("Name" LIKE ? AND "Name" IS NOT NULL))");
  EXPECT_EQ(std::get<std::string>(s.parameters.at(0)), "A%");
}

TEST(Sql, StructureAndQualifiedNames) {
  auto fields = employee_fields();
  SqlFragment s = to_parameterized_sql(bind_text("NOT (Dept IS NULL OR Department.Name <> 'x')", fields));
  EXPECT_EQ(s.text, R"((NOT (("Dept" IS NULL) OR ("Department"."Name" <> ? AND "Department"."Name" IS NOT NULL))))");
  EXPECT_EQ(quote_identifier(R"(a"b)"), R"("a""b")");
}

TEST(Sql, InjectionLiteralStaysInParameters) {
  auto fields = employee_fields();
  SqlFragment s = to_parameterized_sql(bind_text("Name = '''; DROP TABLE t --'", fields));
  EXPECT_EQ(s.text.find("DROP"), std::string::npos);
  EXPECT_EQ(s.text.find(';'), std::string::npos);
  EXPECT_EQ(std::get<std::string>(s.parameters.at(0)), "'; DROP TABLE t --");
}

// ---- properties ----

std::size_t placeholder_count(const std::string& text) { return std::count(text.begin(), text.end(), '?'); }

// Replaces every string literal and LIKE pattern with `value`.
void neutralize(FilterAst& ast, const std::string& value) {
  std::visit(
      [&](auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Box<And>> || std::is_same_v<T, Box<Or>>) {
          neutralize(n->left, value);
          neutralize(n->right, value);
        } else if constexpr (std::is_same_v<T, Box<Not>>) {
          neutralize(n->child, value);
        } else if constexpr (std::is_same_v<T, Like>) {
          n.pattern = value;
        } else if constexpr (std::is_same_v<T, Compare>) {
          auto* s = std::get_if<StringLiteral>(&n.literal);
          if (s && !is_canonical_datetime(s->value)) s->value = value;
        }
      },
      ast);
}

TEST(ExpressionProperty, PrintParseRoundTrip) {
  testing::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto fields = testing::random_fields(rng, 5);
    FilterAst ast = testing::random_filter(rng, fields, 4, false, testing::chance(rng, 0.3));
    std::string text = to_string(ast);
    auto back = parse_filter(text);
    ASSERT_TRUE(back.has_value()) << text;
    ASSERT_EQ(*back, ast) << text;
    OrderSpec order = testing::random_order(rng, fields);
    ASSERT_EQ(parse_order(to_string(order)), order) << to_string(order);
  }
}

TEST(ExpressionProperty, OracleEquivalence) {
  testing::Rng rng(42);
  int matched = 0, total = 0;
  for (int i = 0; i < 1500; ++i) {
    auto fields = testing::random_fields(rng, 5);
    auto rows = testing::random_rows(rng, fields, 50);
    FilterAst ast = testing::random_filter(rng, fields, 4);
    ASSERT_LE(depth(ast), 4);
    BoundFilter bound = expr::bind(ast, fields);
    for (const Row& row : rows) {
      bool got = eval_filter(bound, row);
      ASSERT_EQ(got, testing::oracle_filter(ast, fields, row)) << to_string(ast);
      matched += got;
      ++total;
    }
  }
  // Guard against a vacuous generator.
  EXPECT_GT(matched, total / 10);
  EXPECT_LT(matched, total * 9 / 10);
}

TEST(ExpressionProperty, SortMatchesOracle) {
  testing::Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    auto fields = testing::random_fields(rng, 5);
    auto rows = testing::random_rows(rng, fields, 50);
    OrderSpec spec = testing::random_order(rng, fields);
    BoundOrder order = expr::bind(spec, fields);
    auto sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](const Row& a, const Row& b) { return compare_rows(order, a, b) < 0; });
    ASSERT_EQ(sorted, testing::oracle_sort(spec, fields, rows)) << to_string(spec);
  }
}

TEST(ExpressionProperty, InjectionSafety) {
  testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto fields = testing::random_fields(rng, 5);
    FilterAst ast = testing::random_filter(rng, fields, 4, false, true);
    SqlFragment sql = to_parameterized_sql(expr::bind(ast, fields));
    ASSERT_EQ(placeholder_count(sql.text), sql.parameters.size()) << sql.text;
    // The template is a function of the filter's shape only.
    FilterAst neutral = ast;
    neutralize(neutral, "z");
    ASSERT_EQ(sql.text, to_parameterized_sql(expr::bind(neutral, fields)).text);
    ASSERT_EQ(sql.text.find('\''), std::string::npos) << sql.text;
    ASSERT_EQ(sql.text.find(';'), std::string::npos) << sql.text;
    ASSERT_EQ(sql.text.find("--"), std::string::npos) << sql.text;
  }
}

TEST(ExpressionProperty, CompareRowsIsTotalPreorder) {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto fields = testing::random_fields(rng, 4);
    auto rows = testing::random_rows(rng, fields, 12);
    BoundOrder order = expr::bind(testing::random_order(rng, fields), fields);
    for (const Row& a : rows) {
      ASSERT_EQ(compare_rows(order, a, a), std::weak_ordering::equivalent);
      for (const Row& b : rows) {
        auto ab = compare_rows(order, a, b);
        ASSERT_EQ(ab, 0 <=> compare_rows(order, b, a));
        for (const Row& c : rows) {
          auto bc = compare_rows(order, b, c);
          if (ab <= 0 && bc <= 0) {
            ASSERT_TRUE(compare_rows(order, a, c) <= 0);
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace rsp::expr
