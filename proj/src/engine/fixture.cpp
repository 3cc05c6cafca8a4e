#include "rsp/engine/fixture.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsp/engine/auth.hpp"
#include "rsp/engine/operations.hpp"

namespace rsp::engine {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw FixtureError(message); }

const Json& member(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) fail(where + ": missing \"" + name + "\"");
  return *it;
}

std::string string_member(const Json& j, const char* name, const std::string& where) {
  const Json& v = member(j, name, where);
  if (!v.is_string()) fail(where + "." + name + ": expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) fail(where + "." + name + ": expected a string");
  return it->get<std::string>();
}

bool bool_member(const Json& j, const char* name, const std::string& where, bool fallback) {
  auto it = j.find(name);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) fail(where + "." + name + ": expected a boolean");
  return it->get<bool>();
}

LocalizedText localized(const Json& j, const char* name, const std::string& where) {
  LocalizedText out;
  auto it = j.find(name);
  if (it == j.end()) return out;
  if (!it->is_object()) fail(where + "." + name + ": expected an object");
  for (const auto& [lang, text] : it->items()) {
    if (!text.is_string()) fail(where + "." + name + "." + lang + ": expected a string");
    out[lang] = text.get<std::string>();
  }
  return out;
}

ColumnDef parse_column(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  ColumnDef c;
  c.name = string_member(j, "Name", where);
  std::string type_name = string_member(j, "DataType", where);
  auto type = parse_data_type(type_name);
  if (!type) fail(where + ".DataType: unknown data type '" + type_name + "'");
  c.data_type = *type;
  c.nullable = bool_member(j, "Nullable", where, true);
  c.primary_key = bool_member(j, "PrimaryKey", where, false);
  c.auto_generated = bool_member(j, "AutoGenerated", where, false);
  c.editable = bool_member(j, "Editable", where, !c.auto_generated);
  if (auto it = j.find("MaxLength"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) fail(where + ".MaxLength: expected an integer");
    c.max_length = it->get<std::int64_t>();
  }
  if (auto it = j.find("References"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) fail(where + ".References: expected an object");
    c.fk_target = ForeignKey{string_member(*it, "Table", where + ".References"),
                             string_member(*it, "Column", where + ".References")};
  }
  c.titles = localized(j, "Titles", where);
  c.description = optional_string(j, "Description", where);
  return c;
}

Row parse_row(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array");
  Row row;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_null())
      row.emplace_back(std::nullopt);
    else if (j[i].is_string())
      row.emplace_back(j[i].get<std::string>());
    else
      fail(where + "[" + std::to_string(i) + "]: cells must be strings or null");
  }
  return row;
}

FixtureTable parse_table(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  FixtureTable t;
  TableDef& d = t.definition;
  d.name = string_member(j, "Name", where);
  std::string at = "table '" + d.name + "'";
  d.singular_titles = localized(j, "SingularTitles", at);
  d.plural_titles = localized(j, "PluralTitles", at);
  d.description = optional_string(j, "Description", at);
  d.display_column = optional_string(j, "DisplayColumn", at);
  const Json& columns = member(j, "Columns", at);
  if (!columns.is_array()) fail(at + ".Columns: expected an array");
  for (std::size_t i = 0; i < columns.size(); ++i)
    d.columns.push_back(parse_column(columns[i], at + ".Columns[" + std::to_string(i) + "]"));
  if (auto it = j.find("Rows"); it != j.end()) {
    if (!it->is_array()) fail(at + ".Rows: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      t.rows.push_back(parse_row((*it)[i], at + ".Rows[" + std::to_string(i) + "]"));
  }
  return t;
}

std::map<std::string, ActionSet> parse_grants(const Json& j, const std::string& where) {
  std::map<std::string, ActionSet> grants;
  if (!j.is_object()) fail(where + ".Grants: expected an object");
  for (const auto& [table, codes] : j.items()) {
    if (!codes.is_array()) fail(where + ".Grants." + table + ": expected an array");
    ActionSet set;
    for (const auto& code : codes) {
      if (!code.is_number_integer()) fail(where + ".Grants." + table + ": expected integers");
      set.insert(code.get<int>());
    }
    grants[table] = std::move(set);
  }
  return grants;
}

FixtureUser parse_user(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where + ": expected an object");
  FixtureUser u;
  u.user_name = string_member(j, "UserName", where);
  std::string at = "user '" + u.user_name + "'";
  u.password_hash = optional_string(j, "PasswordHash", at);
  u.salt = optional_string(j, "Salt", at);
  u.password = optional_string(j, "Password", at);
  if (auto it = j.find("Grants"); it != j.end()) u.grants = parse_grants(*it, at);
  return u;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

bool is_language_code(std::string_view s) {
  return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

void check_titles(const LocalizedText& titles, const std::string& where) {
  for (const auto& [lang, text] : titles) {
    if (!is_language_code(lang)) fail(where + ": '" + lang + "' is not an ISO 639-1 code");
    if (text.empty()) fail(where + "." + lang + ": title must not be empty");
  }
}

void check_table_definition(const TableDef& t, const std::map<std::string, TableDef>& catalog) {
  std::string at = "table '" + t.name + "'";
  check_titles(t.singular_titles, at + ".SingularTitles");
  check_titles(t.plural_titles, at + ".PluralTitles");

  std::set<std::string> names;
  int keys = 0;
  for (const ColumnDef& c : t.columns) {
    std::string col = at + " column '" + c.name + "'";
    if (!is_identifier(c.name)) fail(col + ": column name must be an identifier");
    if (!names.insert(c.name).second) fail(col + ": duplicate column name");
    check_titles(c.titles, col + ".Titles");
    if (c.primary_key) {
      ++keys;
      if (c.nullable) fail(col + ": primary key cannot be nullable");
    }
    if (c.auto_generated) {
      if (!c.primary_key) fail(col + ": auto-generated column must be the primary key");
      if (c.data_type != DataType::Int && c.data_type != DataType::Long)
        fail(col + ": auto-generated column must be int or long");
      if (c.editable) fail(col + ": auto-generated column cannot be editable");
    }
    if (c.max_length) {
      if (c.data_type != DataType::Varchar) fail(col + ": MaxLength is only allowed on varchar");
      if (*c.max_length < 0) fail(col + ": MaxLength must be non-negative");
    }
    if (c.fk_target) {
      auto target = catalog.find(c.fk_target->table);
      if (target == catalog.end())
        fail(col + ": references unknown table '" + c.fk_target->table + "'");
      const TableDef& tt = target->second;
      auto idx = tt.column_index(c.fk_target->column);
      if (!idx || !tt.columns[*idx].primary_key)
        fail(col + ": must reference the primary key of '" + tt.name + "'");
      if (tt.columns[*idx].data_type != c.data_type)
        fail(col + ": data type differs from referenced column");
      if (tt.name == t.name && c.fk_target->column == c.name)
        fail(col + ": a column cannot reference itself");
    }
  }
  if (keys == 0) fail(at + ": no primary key column");
  if (keys > 1) fail(at + ": composite primary keys are not supported");
  if (t.display_column) {
    auto idx = t.column_index(*t.display_column);
    if (!idx) fail(at + ": display column '" + *t.display_column + "' missing");
    if (t.columns[*idx].primary_key)
      fail(at + ": display column '" + *t.display_column + "' cannot be the primary key");
  }
}

OrderedJson localized_json(const LocalizedText& text) {
  OrderedJson j = OrderedJson::object();
  for (const auto& [lang, t] : text) j[lang] = t;
  return j;
}

}  // namespace

FixtureDocument parse_fixture(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text.begin(), json_text.end());
  } catch (const Json::parse_error& e) {
    fail(std::string("fixture is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("fixture: expected a JSON object");
  FixtureDocument doc;
  if (auto lang = optional_string(j, "DefaultLanguage", "fixture")) doc.default_language = *lang;
  if (auto it = j.find("Tables"); it != j.end()) {
    if (!it->is_array()) fail("fixture.Tables: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      doc.tables.push_back(parse_table((*it)[i], "Tables[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("Users"); it != j.end()) {
    if (!it->is_array()) fail("fixture.Users: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      doc.users.push_back(parse_user((*it)[i], "Users[" + std::to_string(i) + "]"));
  }
  return doc;
}

FixtureDocument read_fixture_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open fixture file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fixture(buffer.str());
}

StoreState load_fixture_state(const FixtureDocument& fixture) {
  StoreState state;
  if (!is_language_code(fixture.default_language))
    fail("DefaultLanguage '" + fixture.default_language + "' is not an ISO 639-1 code");
  state.default_language = fixture.default_language;

  for (const FixtureTable& t : fixture.tables) {
    if (!is_identifier(t.definition.name))
      fail("table '" + t.definition.name + "': table name must be an identifier");
    if (state.catalog.contains(t.definition.name))
      fail("table '" + t.definition.name + "': duplicate table name");
    state.catalog.emplace(t.definition.name, t.definition);
  }
  for (const auto& [name, def] : state.catalog) check_table_definition(def, state.catalog);

  for (const FixtureTable& t : fixture.tables) {
    const TableDef& def = t.definition;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.rows[i].size() != def.columns.size())
        fail("table '" + def.name + "' row " + std::to_string(i) + ": expected " +
             std::to_string(def.columns.size()) + " cells, got " + std::to_string(t.rows[i].size()));
    }
    state.rows[def.name] = t.rows;

    if (auto id = def.identity_index()) {
      std::int64_t next = 1;
      for (const Row& row : t.rows) {
        if (!row[*id]) continue;
        auto v = parse_integer_cell(*row[*id], def.columns[*id].data_type);
        if (v && *v >= next) next = *v + 1;
      }
      state.identity_counters[def.name] = next;
    }
  }

  for (const FixtureUser& u : fixture.users) {
    std::string at = "user '" + u.user_name + "'";
    if (u.user_name.empty()) fail("user with empty UserName");
    if (state.users.contains(u.user_name)) fail(at + ": duplicate user");
    UserRecord record;
    if (u.password_hash && u.salt) {
      record.password_hash = *u.password_hash;
      record.salt = *u.salt;
    } else if (u.password) {
      record.salt = generate_salt();
      record.password_hash = hash_password(*u.password, record.salt);
    } else {
      fail(at + ": needs PasswordHash and Salt, or Password");
    }
    for (const auto& [table, codes] : u.grants) {
      if (!state.catalog.contains(table)) fail(at + ": grant on unknown table '" + table + "'");
      for (int code : codes)
        if (code < 1 || code > 4) fail(at + ": grant code " + std::to_string(code) + " not in 1..4");
    }
    record.grants = u.grants;
    state.users.emplace(u.user_name, std::move(record));
  }

  auto problems = audit_state(state);
  if (!problems.empty()) fail(problems.front());
  return state;
}

FixtureDocument to_fixture(const StoreState& state) {
  FixtureDocument doc;
  doc.default_language = state.default_language;
  for (const auto& [name, def] : state.catalog) {
    auto rows = state.rows.find(name);
    doc.tables.push_back({def, rows == state.rows.end() ? std::vector<Row>{} : rows->second});
  }
  for (const auto& [name, user] : state.users)
    doc.users.push_back({name, user.password_hash, user.salt, std::nullopt, user.grants});
  return doc;
}

std::string encode_fixture(const FixtureDocument& fixture) {
  OrderedJson root = OrderedJson::object();
  root["DefaultLanguage"] = fixture.default_language;
  OrderedJson tables = OrderedJson::array();
  for (const FixtureTable& t : fixture.tables) {
    const TableDef& d = t.definition;
    OrderedJson jt = OrderedJson::object();
    jt["Name"] = d.name;
    jt["SingularTitles"] = localized_json(d.singular_titles);
    jt["PluralTitles"] = localized_json(d.plural_titles);
    if (d.description) jt["Description"] = *d.description;
    if (d.display_column) jt["DisplayColumn"] = *d.display_column;
    OrderedJson columns = OrderedJson::array();
    for (const ColumnDef& c : d.columns) {
      OrderedJson jc = OrderedJson::object();
      jc["Name"] = c.name;
      jc["DataType"] = std::string(to_string(c.data_type));
      jc["Nullable"] = c.nullable;
      jc["PrimaryKey"] = c.primary_key;
      jc["AutoGenerated"] = c.auto_generated;
      jc["Editable"] = c.editable;
      if (c.max_length) jc["MaxLength"] = *c.max_length;
      if (c.fk_target) jc["References"] = {{"Table", c.fk_target->table}, {"Column", c.fk_target->column}};
      jc["Titles"] = localized_json(c.titles);
      if (c.description) jc["Description"] = *c.description;
      columns.push_back(std::move(jc));
    }
    jt["Columns"] = std::move(columns);
    OrderedJson rows = OrderedJson::array();
    for (const Row& row : t.rows) {
      OrderedJson jr = OrderedJson::array();
      for (const Cell& cell : row) jr.push_back(cell ? OrderedJson(*cell) : OrderedJson(nullptr));
      rows.push_back(std::move(jr));
    }
    jt["Rows"] = std::move(rows);
    tables.push_back(std::move(jt));
  }
  root["Tables"] = std::move(tables);
  OrderedJson users = OrderedJson::array();
  for (const FixtureUser& u : fixture.users) {
    OrderedJson ju = OrderedJson::object();
    ju["UserName"] = u.user_name;
    if (u.password_hash) ju["PasswordHash"] = *u.password_hash;
    if (u.salt) ju["Salt"] = *u.salt;
    if (u.password) ju["Password"] = *u.password;
    OrderedJson grants = OrderedJson::object();
    for (const auto& [table, codes] : u.grants) grants[table] = std::vector<int>(codes.begin(), codes.end());
    ju["Grants"] = std::move(grants);
    users.push_back(std::move(ju));
  }
  root["Users"] = std::move(users);
  return root.dump(2);
}

}  // namespace rsp::engine
