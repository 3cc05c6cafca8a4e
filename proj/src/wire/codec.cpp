#include "rsp/wire/codec.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "rsp/wire/cell.hpp"

namespace rsp {

namespace {

using OrderedJson = nlohmann::ordered_json;
using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Encoding

OrderedJson to_json(const TableHeader& h) {
  OrderedJson j = OrderedJson::object();
  j["TableName"] = h.table_name;
  j["SingularTitle"] = h.singular_title;
  j["PluralTitle"] = h.plural_title;
  if (h.description) j["Description"] = *h.description;
  return j;
}

OrderedJson to_json(const Field& f) {
  OrderedJson j = OrderedJson::object();
  j["DataType"] = f.data_type;
  if (f.description) j["Description"] = *f.description;
  j["ID"] = f.id;
  j["IsAutoGenerated"] = f.is_auto_generated;
  j["IsDisplayField"] = f.is_display_field;
  j["IsEditable"] = f.is_editable;
  j["IsForeignKey"] = f.is_foreign_key;
  j["IsJoined"] = f.is_joined;
  j["IsNullable"] = f.is_nullable;
  j["IsPrimaryKey"] = f.is_primary_key;
  if (f.max_length) j["MaxLength"] = *f.max_length;
  j["Name"] = f.name;
  if (f.referenced_field) j["ReferencedField"] = *f.referenced_field;
  if (f.referenced_table) j["ReferencedTable"] = *f.referenced_table;
  j["Table"] = f.table;
  j["Title"] = f.title;
  return j;
}

OrderedJson to_json(const Reference& r) {
  OrderedJson j = OrderedJson::object();
  j["RedField"] = r.red_field;
  j["RedTable"] = r.red_table;
  j["RingField"] = r.ring_field;
  j["RingFieldTitle"] = r.ring_field_title;
  j["RingTable"] = r.ring_table;
  j["RingTablePluralTitle"] = r.ring_table_plural_title;
  return j;
}

OrderedJson to_json(const Row& row) {
  OrderedJson j = OrderedJson::array();
  for (const auto& cell : row) {
    if (cell)
      j.push_back(*cell);
    else
      j.push_back(nullptr);
  }
  return j;
}

template <typename T>
OrderedJson array_of(const std::vector<T>& items) {
  OrderedJson j = OrderedJson::array();
  for (const auto& item : items) j.push_back(to_json(item));
  return j;
}

OrderedJson to_json(const TableMessage& t) {
  OrderedJson j = OrderedJson::object();
  j["Actions"] = t.actions;
  j["Fields"] = array_of(t.fields);
  j["Header"] = to_json(t.header);
  j["Items"] = array_of(t.items);
  j["References"] = array_of(t.references);
  return j;
}

OrderedJson to_json(const ReadTableHeadersRequest& m) {
  OrderedJson j = OrderedJson::object();
  j["UserName"] = m.user_name;
  j["Password"] = m.password;
  if (m.language) j["Language"] = *m.language;
  return j;
}

OrderedJson to_json(const ReadTableHeadersResponse& m) {
  OrderedJson j = OrderedJson::object();
  j["TableHeaders"] = array_of(m.table_headers);
  return j;
}

OrderedJson to_json(const ReadTableRequest& m) {
  OrderedJson j = OrderedJson::object();
  j["UserName"] = m.user_name;
  j["Password"] = m.password;
  j["TableName"] = m.table_name;
  if (m.language) j["Language"] = *m.language;
  j["Skip"] = m.skip;
  j["Take"] = m.take;
  if (m.order_expression) j["OrderExpression"] = *m.order_expression;
  if (m.filter_expression) j["FilterExpression"] = *m.filter_expression;
  return j;
}

OrderedJson to_json(const ReadTableResponse& m) {
  OrderedJson j = OrderedJson::object();
  j["Table"] = to_json(m.table);
  return j;
}

OrderedJson to_json(const SubmitRequest& m) {
  OrderedJson j = OrderedJson::object();
  j["UserName"] = m.user_name;
  j["Password"] = m.password;
  j["TableName"] = m.table_name;
  j["Operation"] = m.operation;
  j["Fields"] = array_of(m.fields);
  j["Data"] = to_json(m.data);
  return j;
}

OrderedJson to_json(const SubmitResponse& m) {
  OrderedJson j = OrderedJson::object();
  if (m.identity) j["Identity"] = *m.identity;
  return j;
}

OrderedJson to_json(const ErrorEnvelope& m) {
  OrderedJson j = OrderedJson::object();
  j["Code"] = std::string(to_string(m.code));
  j["Message"] = m.message;
  return j;
}

template <typename T>
std::string encode_checked(const T& message, std::string_view type_name) {
  auto violations = validate_message(message);
  if (!violations.empty()) {
    throw InvariantViolation(std::string(type_name) + "." + violations.front().attribute + ": " +
                             violations.front().description);
  }
  try {
    return to_json(message).dump();
  } catch (const nlohmann::json::type_error&) {
    throw InvariantViolation(std::string(type_name) + ": string value is not valid UTF-8");
  }
}

// ---------------------------------------------------------------------------
// Decoding

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedMessage, path.empty() ? what : path + ": " + what);
}

/// Strict accessor over one JSON object. Paths in error messages use wire
/// names only; values are never echoed back.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) malformed(path_, "expected a JSON object");
  }

  const Json* find(const char* name) const {
    auto it = j_.find(name);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& required(const char* name) const {
    const Json* v = find(name);
    if (!v) malformed(path_, std::string("missing required member ") + name);
    return *v;
  }

  std::string child_path(const char* name) const {
    return path_.empty() ? std::string(name) : path_ + "." + name;
  }

  std::string string(const char* name) const { return as_string(required(name), child_path(name)); }

  std::optional<std::string> optional_string(const char* name) const {
    const Json* v = find(name);
    if (!v) return std::nullopt;
    return as_string(*v, child_path(name));
  }

  bool boolean(const char* name) const {
    const Json& v = required(name);
    if (!v.is_boolean()) malformed(child_path(name), "expected a boolean");
    return v.get<bool>();
  }

  std::int64_t int64(const char* name) const { return as_int64(required(name), child_path(name)); }

  std::optional<std::int64_t> optional_int64(const char* name) const {
    const Json* v = find(name);
    if (!v) return std::nullopt;
    return as_int64(*v, child_path(name));
  }

  int int32(const char* name) const {
    auto v = int64(name);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      malformed(child_path(name), "integer out of range");
    return static_cast<int>(v);
  }

  const Json& array(const char* name) const {
    const Json& v = required(name);
    if (!v.is_array()) malformed(child_path(name), "expected an array");
    return v;
  }

  static std::string as_string(const Json& v, const std::string& path) {
    if (!v.is_string()) malformed(path, "expected a string");
    return v.get<std::string>();
  }

  static std::int64_t as_int64(const Json& v, const std::string& path) {
    if (v.is_number_unsigned()) {
      auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        malformed(path, "integer out of range");
      return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) malformed(path, "expected an integer");
    return v.get<std::int64_t>();
  }

 private:
  const Json& j_;
  std::string path_;
};

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

TableHeader header_from(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  TableHeader h;
  h.table_name = r.string("TableName");
  h.singular_title = r.string("SingularTitle");
  h.plural_title = r.string("PluralTitle");
  h.description = r.optional_string("Description");
  return h;
}

Field field_from(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Field f;
  f.data_type = r.string("DataType");
  f.description = r.optional_string("Description");
  f.id = r.string("ID");
  f.is_auto_generated = r.boolean("IsAutoGenerated");
  f.is_display_field = r.boolean("IsDisplayField");
  f.is_editable = r.boolean("IsEditable");
  f.is_foreign_key = r.boolean("IsForeignKey");
  f.is_joined = r.boolean("IsJoined");
  f.is_nullable = r.boolean("IsNullable");
  f.is_primary_key = r.boolean("IsPrimaryKey");
  f.max_length = r.optional_int64("MaxLength");
  f.name = r.string("Name");
  f.referenced_field = r.optional_string("ReferencedField");
  f.referenced_table = r.optional_string("ReferencedTable");
  f.table = r.string("Table");
  f.title = r.string("Title");
  return f;
}

Reference reference_from(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  Reference ref;
  ref.red_field = r.string("RedField");
  ref.red_table = r.string("RedTable");
  ref.ring_field = r.string("RingField");
  ref.ring_field_title = r.string("RingFieldTitle");
  ref.ring_table = r.string("RingTable");
  ref.ring_table_plural_title = r.string("RingTablePluralTitle");
  return ref;
}

Row row_from(const Json& j, const std::string& path) {
  if (!j.is_array()) malformed(path, "expected an array");
  Row row;
  row.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& cell = j[i];
    if (cell.is_null())
      row.emplace_back(std::nullopt);
    else
      row.emplace_back(ObjectReader::as_string(cell, index_path(path, i)));
  }
  return row;
}

template <typename T, typename Fn>
std::vector<T> list_from(const Json& array, const std::string& path, Fn&& fn) {
  std::vector<T> out;
  out.reserve(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) out.push_back(fn(array[i], index_path(path, i)));
  return out;
}

TableMessage table_from(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  TableMessage t;
  const Json& actions = r.array("Actions");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto v = ObjectReader::as_int64(actions[i], index_path(r.child_path("Actions"), i));
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      malformed(index_path(r.child_path("Actions"), i), "integer out of range");
    t.actions.push_back(static_cast<int>(v));
  }
  t.fields = list_from<Field>(r.array("Fields"), r.child_path("Fields"), field_from);
  t.header = header_from(r.required("Header"), r.child_path("Header"));
  t.items = list_from<Row>(r.array("Items"), r.child_path("Items"), row_from);
  t.references =
      list_from<Reference>(r.array("References"), r.child_path("References"), reference_from);
  return t;
}

ReadTableHeadersRequest read_table_headers_request_from(const Json& j) {
  ObjectReader r(j, "");
  ReadTableHeadersRequest m;
  m.user_name = r.string("UserName");
  m.password = r.string("Password");
  m.language = r.optional_string("Language");
  return m;
}

ReadTableHeadersResponse read_table_headers_response_from(const Json& j) {
  ObjectReader r(j, "");
  ReadTableHeadersResponse m;
  m.table_headers = list_from<TableHeader>(r.array("TableHeaders"), "TableHeaders", header_from);
  return m;
}

ReadTableRequest read_table_request_from(const Json& j) {
  ObjectReader r(j, "");
  ReadTableRequest m;
  m.user_name = r.string("UserName");
  m.password = r.string("Password");
  m.table_name = r.string("TableName");
  m.language = r.optional_string("Language");
  m.skip = r.int64("Skip");
  m.take = r.int64("Take");
  m.order_expression = r.optional_string("OrderExpression");
  m.filter_expression = r.optional_string("FilterExpression");
  return m;
}

ReadTableResponse read_table_response_from(const Json& j) {
  ObjectReader r(j, "");
  return ReadTableResponse{table_from(r.required("Table"), "Table")};
}

SubmitRequest submit_request_from(const Json& j) {
  ObjectReader r(j, "");
  SubmitRequest m;
  m.user_name = r.string("UserName");
  m.password = r.string("Password");
  m.table_name = r.string("TableName");
  m.operation = r.int32("Operation");
  m.fields = list_from<Field>(r.array("Fields"), "Fields", field_from);
  m.data = row_from(r.array("Data"), "Data");
  return m;
}

SubmitResponse submit_response_from(const Json& j) {
  ObjectReader r(j, "");
  return SubmitResponse{r.optional_string("Identity")};
}

ErrorEnvelope error_envelope_from(const Json& j) {
  ObjectReader r(j, "");
  ErrorEnvelope m;
  auto code = parse_error_code(r.string("Code"));
  if (!code) malformed("Code", "unknown error code");
  m.code = *code;
  m.message = r.string("Message");
  return m;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.what() quotes input bytes, which may include credentials.
    malformed("", "invalid JSON near byte " + std::to_string(e.byte));
  }
}

template <typename T, typename Fn>
T decode_checked(std::string_view text, Fn&& from) {
  Json j = parse_json(text);
  T message = from(j);
  auto violations = validate_message(message);
  if (!violations.empty()) {
    if constexpr (std::is_same_v<T, SubmitRequest>) {
      for (const auto& v : violations)
        if (v.attribute == "Operation") throw Error(ErrorCode::BadOperation, v.description);
    }
    const auto& v = violations.front();
    malformed(v.attribute, v.description);
  }
  return message;
}

// ---------------------------------------------------------------------------
// Validation

bool is_language_code(std::string_view s) {
  return s.size() == 2 && s[0] >= 'a' && s[0] <= 'z' && s[1] >= 'a' && s[1] <= 'z';
}

bool is_field_id_for(const Field& f) {
  std::string base = f.table + "." + f.name;
  if (f.id == base) return true;
  // Disambiguated joined ids: "<table>.<name>#<k>" with k >= 2.
  if (f.id.size() <= base.size() + 1 || f.id.compare(0, base.size(), base) != 0 ||
      f.id[base.size()] != '#')
    return false;
  std::string_view k(f.id);
  k.remove_prefix(base.size() + 1);
  if (k.front() == '0') return false;
  if (!std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
  return k != "1";
}

void prefixed(std::vector<Violation>& out, const std::string& prefix, std::vector<Violation> inner) {
  for (auto& v : inner) out.push_back({prefix + "." + v.attribute, std::move(v.description)});
}

void check_credentials(std::vector<Violation>& out, const std::string& user,
                       const std::optional<std::string>& language) {
  if (user.empty()) out.push_back({"UserName", "must not be empty"});
  if (language && !is_language_code(*language))
    out.push_back({"Language", "must be an ISO 639-1 two-letter lowercase code"});
}

}  // namespace

std::vector<Violation> validate_message(const TableHeader& h) {
  std::vector<Violation> out;
  if (h.table_name.empty()) out.push_back({"TableName", "must not be empty"});
  if (h.singular_title.empty()) out.push_back({"SingularTitle", "must not be empty"});
  if (h.plural_title.empty()) out.push_back({"PluralTitle", "must not be empty"});
  return out;
}

std::vector<Violation> validate_message(const Field& f) {
  std::vector<Violation> out;
  if (f.data_type.empty()) out.push_back({"DataType", "must not be empty"});
  if (f.name.empty()) out.push_back({"Name", "must not be empty"});
  if (f.table.empty()) out.push_back({"Table", "must not be empty"});
  if (!is_field_id_for(f)) out.push_back({"ID", "must be <Table>.<Name>"});
  if (f.is_foreign_key) {
    if (!f.referenced_table) out.push_back({"ReferencedTable", "required for a foreign key"});
    if (!f.referenced_field) out.push_back({"ReferencedField", "required for a foreign key"});
  } else {
    if (f.referenced_table) out.push_back({"ReferencedTable", "only allowed on a foreign key"});
    if (f.referenced_field) out.push_back({"ReferencedField", "only allowed on a foreign key"});
  }
  if (f.max_length) {
    if (f.data_type != "varchar")
      out.push_back({"MaxLength", "only allowed for character data types"});
    else if (*f.max_length < 0)
      out.push_back({"MaxLength", "must be non-negative"});
  }
  if (f.is_auto_generated && f.is_editable)
    out.push_back({"IsEditable", "auto-generated column cannot be editable"});
  if (f.is_display_field && !f.is_joined)
    out.push_back({"IsJoined", "display field must be a joined field"});
  return out;
}

std::vector<Violation> validate_message(const Reference& r) {
  std::vector<Violation> out;
  if (r.red_field.empty()) out.push_back({"RedField", "must not be empty"});
  if (r.red_table.empty()) out.push_back({"RedTable", "must not be empty"});
  if (r.ring_field.empty()) out.push_back({"RingField", "must not be empty"});
  if (r.ring_field_title.empty()) out.push_back({"RingFieldTitle", "must not be empty"});
  if (r.ring_table.empty()) out.push_back({"RingTable", "must not be empty"});
  if (r.ring_table_plural_title.empty())
    out.push_back({"RingTablePluralTitle", "must not be empty"});
  if (r.ring_table == r.red_table && r.ring_field == r.red_field)
    out.push_back({"RingField", "a column cannot reference itself"});
  return out;
}

std::vector<Violation> validate_message(const TableMessage& t) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    int a = t.actions[i];
    if (a < 1 || a > 4)
      out.push_back({index_path("Actions", i), "action code must be 1..4"});
    else if (i > 0 && a <= t.actions[i - 1])
      out.push_back({index_path("Actions", i), "action codes must be distinct and ascending"});
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < t.fields.size(); ++i) {
    prefixed(out, index_path("Fields", i), validate_message(t.fields[i]));
    if (!ids.insert(t.fields[i].id).second)
      out.push_back({index_path("Fields", i) + ".ID", "duplicate field id"});
  }
  prefixed(out, "Header", validate_message(t.header));
  for (std::size_t i = 0; i < t.items.size(); ++i) {
    if (t.items[i].size() != t.fields.size())
      out.push_back({index_path("Items", i), "row length " + std::to_string(t.items[i].size()) +
                                                 " does not match " +
                                                 std::to_string(t.fields.size()) + " fields"});
  }
  for (std::size_t i = 0; i < t.references.size(); ++i)
    prefixed(out, index_path("References", i), validate_message(t.references[i]));
  return out;
}

std::vector<Violation> validate_message(const ReadTableHeadersRequest& m) {
  std::vector<Violation> out;
  check_credentials(out, m.user_name, m.language);
  return out;
}

std::vector<Violation> validate_message(const ReadTableHeadersResponse& m) {
  std::vector<Violation> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < m.table_headers.size(); ++i) {
    prefixed(out, index_path("TableHeaders", i), validate_message(m.table_headers[i]));
    if (!names.insert(m.table_headers[i].table_name).second)
      out.push_back({index_path("TableHeaders", i) + ".TableName", "duplicate table name"});
  }
  return out;
}

std::vector<Violation> validate_message(const ReadTableRequest& m) {
  std::vector<Violation> out;
  check_credentials(out, m.user_name, m.language);
  if (m.table_name.empty()) out.push_back({"TableName", "must not be empty"});
  if (m.skip < 0) out.push_back({"Skip", "must be non-negative"});
  if (m.take < 0) out.push_back({"Take", "must be non-negative"});
  return out;
}

std::vector<Violation> validate_message(const ReadTableResponse& m) {
  std::vector<Violation> out;
  prefixed(out, "Table", validate_message(m.table));
  if (std::find(m.table.actions.begin(), m.table.actions.end(),
                static_cast<int>(Action::Select)) == m.table.actions.end())
    out.push_back({"Table.Actions", "a readable table must grant SELECT"});
  return out;
}

std::vector<Violation> validate_message(const SubmitRequest& m) {
  std::vector<Violation> out;
  check_credentials(out, m.user_name, std::nullopt);
  if (m.table_name.empty()) out.push_back({"TableName", "must not be empty"});
  if (m.operation < 1 || m.operation > 3)
    out.push_back({"Operation", "operation code must be 1 (INSERT), 2 (UPDATE) or 3 (DELETE)"});
  for (std::size_t i = 0; i < m.fields.size(); ++i)
    prefixed(out, index_path("Fields", i), validate_message(m.fields[i]));
  if (m.data.size() != m.fields.size())
    out.push_back({"Data", "length " + std::to_string(m.data.size()) + " does not match " +
                               std::to_string(m.fields.size()) + " fields"});
  return out;
}

std::vector<Violation> validate_message(const SubmitResponse&) { return {}; }

std::vector<Violation> validate_message(const ErrorEnvelope&) { return {}; }

std::vector<Violation> validate_message(const Message& message) {
  return std::visit([](const auto& m) { return validate_message(m); }, message);
}

std::string encode(const TableHeader& m) { return encode_checked(m, "TableHeader"); }
std::string encode(const Field& m) { return encode_checked(m, "Field"); }
std::string encode(const Reference& m) { return encode_checked(m, "Reference"); }
std::string encode(const TableMessage& m) { return encode_checked(m, "Table"); }
std::string encode(const ReadTableHeadersRequest& m) {
  return encode_checked(m, "ReadTableHeadersRequest");
}
std::string encode(const ReadTableHeadersResponse& m) {
  return encode_checked(m, "ReadTableHeadersResponse");
}
std::string encode(const ReadTableRequest& m) { return encode_checked(m, "ReadTableRequest"); }
std::string encode(const ReadTableResponse& m) { return encode_checked(m, "ReadTableResponse"); }
std::string encode(const SubmitRequest& m) { return encode_checked(m, "SubmitRequest"); }
std::string encode(const SubmitResponse& m) { return encode_checked(m, "SubmitResponse"); }
std::string encode(const ErrorEnvelope& m) { return encode_checked(m, "ErrorEnvelope"); }

std::string encode(const Message& message) {
  return std::visit([](const auto& m) { return encode(m); }, message);
}

template <>
ReadTableHeadersRequest decode_as(std::string_view text) {
  return decode_checked<ReadTableHeadersRequest>(text, read_table_headers_request_from);
}
template <>
ReadTableHeadersResponse decode_as(std::string_view text) {
  return decode_checked<ReadTableHeadersResponse>(text, read_table_headers_response_from);
}
template <>
ReadTableRequest decode_as(std::string_view text) {
  return decode_checked<ReadTableRequest>(text, read_table_request_from);
}
template <>
ReadTableResponse decode_as(std::string_view text) {
  return decode_checked<ReadTableResponse>(text, read_table_response_from);
}
template <>
SubmitRequest decode_as(std::string_view text) {
  return decode_checked<SubmitRequest>(text, submit_request_from);
}
template <>
SubmitResponse decode_as(std::string_view text) {
  return decode_checked<SubmitResponse>(text, submit_response_from);
}
template <>
ErrorEnvelope decode_as(std::string_view text) {
  return decode_checked<ErrorEnvelope>(text, error_envelope_from);
}
template <>
TableHeader decode_as(std::string_view text) {
  return decode_checked<TableHeader>(text, [](const Json& j) { return header_from(j, ""); });
}
template <>
Field decode_as(std::string_view text) {
  return decode_checked<Field>(text, [](const Json& j) { return field_from(j, ""); });
}
template <>
Reference decode_as(std::string_view text) {
  return decode_checked<Reference>(text, [](const Json& j) { return reference_from(j, ""); });
}
template <>
TableMessage decode_as(std::string_view text) {
  return decode_checked<TableMessage>(text, [](const Json& j) { return table_from(j, ""); });
}

Message decode(MessageKind kind, std::string_view text) {
  switch (kind) {
    case MessageKind::ReadTableHeadersRequest:
      return decode_as<ReadTableHeadersRequest>(text);
    case MessageKind::ReadTableHeadersResponse:
      return decode_as<ReadTableHeadersResponse>(text);
    case MessageKind::ReadTableRequest:
      return decode_as<ReadTableRequest>(text);
    case MessageKind::ReadTableResponse:
      return decode_as<ReadTableResponse>(text);
    case MessageKind::SubmitRequest:
      return decode_as<SubmitRequest>(text);
    case MessageKind::SubmitResponse:
      return decode_as<SubmitResponse>(text);
    case MessageKind::ErrorEnvelope:
      return decode_as<ErrorEnvelope>(text);
  }
  throw Error(ErrorCode::MalformedMessage, "unknown message kind");
}

std::vector<std::string> required_members(MessageKind kind) {
  switch (kind) {
    case MessageKind::ReadTableHeadersRequest:
      return {"UserName", "Password"};
    case MessageKind::ReadTableHeadersResponse:
      return {"TableHeaders"};
    case MessageKind::ReadTableRequest:
      return {"UserName", "Password", "TableName", "Skip", "Take"};
    case MessageKind::ReadTableResponse:
      return {"Table"};
    case MessageKind::SubmitRequest:
      return {"UserName", "Password", "TableName", "Operation", "Fields", "Data"};
    case MessageKind::SubmitResponse:
      return {};
    case MessageKind::ErrorEnvelope:
      return {"Code", "Message"};
  }
  return {};
}

}  // namespace rsp
