#include "rsp/engine/operations.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "rsp/engine/auth.hpp"
#include "rsp/engine/fixture.hpp"
#include "rsp/expression/bound.hpp"
#include "rsp/expression/parser.hpp"
#include "rsp/wire/error.hpp"

namespace rsp::engine {

namespace {

const TableDef& require_table(const StoreState& state, const std::string& name) {
  const TableDef* def = state.find_table(name);
  if (!def) throw Error(ErrorCode::UnknownTable, "unknown table '" + name + "'");
  return *def;
}

const std::vector<Row>& rows_of(const StoreState& state, const std::string& table) {
  static const std::vector<Row> kEmpty;
  auto it = state.rows.find(table);
  return it == state.rows.end() ? kEmpty : it->second;
}

/// Normalized primary key -> row index.
std::unordered_map<std::string, std::size_t> key_index(const StoreState& state, const TableDef& def) {
  std::unordered_map<std::string, std::size_t> index;
  std::size_t pk = def.primary_key_index();
  DataType type = def.columns[pk].data_type;
  const auto& rows = rows_of(state, def.name);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i][pk]) index.emplace(key_of(type, *rows[i][pk]), i);
  return index;
}

std::optional<std::size_t> find_row_by_key(const StoreState& state, const TableDef& def,
                                           const std::string& key) {
  std::size_t pk = def.primary_key_index();
  DataType type = def.columns[pk].data_type;
  const auto& rows = rows_of(state, def.name);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i][pk] && key_of(type, *rows[i][pk]) == key) return i;
  return std::nullopt;
}

const TableDef* display_target(const StoreState& state, const ColumnDef& column) {
  if (!column.fk_target) return nullptr;
  const TableDef* target = state.find_table(column.fk_target->table);
  if (!target || !target->display_column) return nullptr;
  return target;
}

Field base_field(const StoreState& state, const TableDef& def, const ColumnDef& c,
                 const std::optional<std::string>& language) {
  Field f;
  f.data_type = std::string(to_string(c.data_type));
  f.description = c.description;
  f.id = def.name + "." + c.name;
  f.is_auto_generated = c.auto_generated;
  f.is_display_field = false;
  f.is_editable = c.editable && !c.auto_generated;
  f.is_foreign_key = c.fk_target.has_value();
  f.is_joined = false;
  f.is_nullable = c.nullable;
  f.is_primary_key = c.primary_key;
  f.max_length = c.data_type == DataType::Varchar ? c.max_length : std::nullopt;
  f.name = c.name;
  if (c.fk_target) {
    f.referenced_field = c.fk_target->column;
    f.referenced_table = c.fk_target->table;
  }
  f.table = def.name;
  f.title = localize(c.titles, language, state.default_language, c.name);
  return f;
}

std::string unique_id(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.contains(base)) return base;
  for (int k = 2;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!taken.contains(candidate)) return candidate;
  }
}

[[noreturn]] void constraint(const std::vector<std::string>& problems) {
  std::string message = problems.front();
  for (std::size_t i = 1; i < problems.size(); ++i) message += "; " + problems[i];
  throw Error(ErrorCode::ConstraintViolation, message);
}

void check_cell(const TableDef& def, const ColumnDef& c, const Cell& cell,
                std::vector<std::string>& out) {
  std::string at = def.name + "." + c.name;
  if (!cell) {
    if (!c.nullable || c.primary_key) out.push_back(at + ": NULL in non-nullable column");
    return;
  }
  if (!is_canonical_cell(c.data_type, *cell))
    out.push_back(at + ": '" + *cell + "' is not a valid " + std::string(to_string(c.data_type)));
  else if (c.max_length && static_cast<std::int64_t>(code_point_length(*cell)) > *c.max_length)
    out.push_back(at + ": value longer than MaxLength " + std::to_string(*c.max_length));
}

/// Validates a full row in catalog order against the stored state.
std::vector<std::string> check_row(const StoreState& state, const TableDef& def, const Row& row,
                                   std::optional<std::size_t> replacing) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < def.columns.size(); ++i) check_cell(def, def.columns[i], row[i], out);
  if (!out.empty()) return out;

  std::size_t pk = def.primary_key_index();
  DataType pk_type = def.columns[pk].data_type;
  std::string own_key = key_of(pk_type, *row[pk]);
  const auto& rows = rows_of(state, def.name);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (replacing && i == *replacing) continue;
    if (rows[i][pk] && key_of(pk_type, *rows[i][pk]) == own_key) {
      out.push_back(def.name + "." + def.columns[pk].name + ": duplicate primary key '" +
                    *row[pk] + "'");
      break;
    }
  }

  for (std::size_t i = 0; i < def.columns.size(); ++i) {
    const ColumnDef& c = def.columns[i];
    if (!c.fk_target || !row[i]) continue;
    const TableDef* target = state.find_table(c.fk_target->table);
    if (!target) {
      out.push_back(def.name + "." + c.name + ": references unknown table");
      continue;
    }
    std::string key = key_of(c.data_type, *row[i]);
    bool self = target->name == def.name && key == own_key;
    if (!self && !find_row_by_key(state, *target, key))
      out.push_back(def.name + "." + c.name + ": dangling foreign key '" + *row[i] + "' (no " +
                    target->name + " row with that key)");
  }
  return out;
}

struct ResolvedFields {
  std::vector<std::size_t> columns;  // aligned with request.fields
};

ResolvedFields resolve_submit_fields(const TableDef& def, const SubmitRequest& request) {
  ResolvedFields out;
  std::set<std::size_t> seen;
  for (const Field& f : request.fields) {
    auto idx = def.column_index(f.name);
    if (!idx) throw Error(ErrorCode::UnknownField, "table '" + def.name + "' has no column '" + f.name + "'");
    if (!seen.insert(*idx).second)
      throw Error(ErrorCode::BadOperation, "column '" + f.name + "' appears more than once");
    out.columns.push_back(*idx);
  }
  return out;
}

std::optional<std::size_t> position_of(const ResolvedFields& r, std::size_t column) {
  auto it = std::find(r.columns.begin(), r.columns.end(), column);
  if (it == r.columns.end()) return std::nullopt;
  return static_cast<std::size_t>(it - r.columns.begin());
}

/// Locates the row addressed by the primary-key value in the submitted data.
std::size_t locate_target(const StoreState& state, const TableDef& def, const ResolvedFields& r,
                          const SubmitRequest& request, std::string_view verb) {
  std::size_t pk = def.primary_key_index();
  auto at = position_of(r, pk);
  if (!at)
    throw Error(ErrorCode::BadOperation, std::string(verb) + " requires the primary-key column '" +
                                             def.columns[pk].name + "'");
  const Cell& value = request.data[*at];
  const ColumnDef& key_column = def.columns[pk];
  if (!value || !is_canonical_cell(key_column.data_type, *value))
    throw Error(ErrorCode::ConstraintViolation,
                def.name + "." + key_column.name + ": invalid primary-key value");
  auto row = find_row_by_key(state, def, key_of(key_column.data_type, *value));
  if (!row)
    throw Error(ErrorCode::NotFound, "no " + def.name + " row with " + key_column.name + " = " + *value);
  return *row;
}

SubmitResponse do_insert(StoreState& state, const TableDef& def, const ResolvedFields& r,
                         const SubmitRequest& request) {
  Row row(def.columns.size());
  for (std::size_t k = 0; k < r.columns.size(); ++k) {
    const ColumnDef& c = def.columns[r.columns[k]];
    if (c.auto_generated)
      throw Error(ErrorCode::BadOperation, "column '" + c.name + "' is auto-generated");
    row[r.columns[k]] = request.data[k];
  }

  std::optional<std::string> identity;
  auto id = def.identity_index();
  if (id) {
    std::int64_t next = state.identity_counters[def.name];
    std::int64_t limit = def.columns[*id].data_type == DataType::Int
                             ? std::numeric_limits<std::int32_t>::max()
                             : std::numeric_limits<std::int64_t>::max();
    if (next > limit)
      throw Error(ErrorCode::ConstraintViolation, def.name + ": identity range exhausted");
    identity = std::to_string(next);
    row[*id] = identity;
  }

  auto problems = check_row(state, def, row, std::nullopt);
  if (!problems.empty()) constraint(problems);

  state.rows[def.name].push_back(std::move(row));
  if (id) ++state.identity_counters[def.name];
  return SubmitResponse{identity};
}

SubmitResponse do_update(StoreState& state, const TableDef& def, const ResolvedFields& r,
                         const SubmitRequest& request) {
  std::size_t target = locate_target(state, def, r, request, "UPDATE");
  std::size_t pk = def.primary_key_index();
  Row row = state.rows[def.name][target];
  for (std::size_t k = 0; k < r.columns.size(); ++k) {
    std::size_t col = r.columns[k];
    if (col == pk) continue;
    const ColumnDef& c = def.columns[col];
    if (c.auto_generated || !c.editable)
      throw Error(ErrorCode::BadOperation, "column '" + c.name + "' is not editable");
    row[col] = request.data[k];
  }
  auto problems = check_row(state, def, row, target);
  if (!problems.empty()) constraint(problems);
  state.rows[def.name][target] = std::move(row);
  return SubmitResponse{};
}

SubmitResponse do_delete(StoreState& state, const TableDef& def, const ResolvedFields& r,
                         const SubmitRequest& request) {
  std::size_t target = locate_target(state, def, r, request, "DELETE");
  std::size_t pk = def.primary_key_index();
  const Row& victim = state.rows[def.name][target];
  std::string key = key_of(def.columns[pk].data_type, *victim[pk]);

  for (const auto& [name, other] : state.catalog) {
    const auto& rows = rows_of(state, name);
    for (std::size_t c = 0; c < other.columns.size(); ++c) {
      const ColumnDef& col = other.columns[c];
      if (!col.fk_target || col.fk_target->table != def.name) continue;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (name == def.name && i == target) continue;
        if (rows[i][c] && key_of(col.data_type, *rows[i][c]) == key)
          throw Error(ErrorCode::ConstraintViolation,
                      def.name + " row " + *victim[pk] + " is referenced by " + name + "." + col.name);
      }
    }
  }
  auto& rows = state.rows[def.name];
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(target));
  return SubmitResponse{};
}

}  // namespace

std::vector<TableHeader> read_table_headers(const StoreState& state, const Principal& principal,
                                            const std::optional<std::string>& language) {
  std::vector<TableHeader> out;
  // catalog is a std::map, so iteration is already in name order
  for (const auto& [name, def] : state.catalog) {
    if (!principal.allows(name, Action::Select)) continue;
    out.push_back(TableHeader{
        name,
        localize(def.singular_titles, language, state.default_language, name),
        localize(def.plural_titles, language, state.default_language, name),
        def.description,
    });
  }
  return out;
}

std::vector<Field> plan_fields(const StoreState& state, const std::string& table_name,
                               const std::optional<std::string>& language) {
  const TableDef& def = require_table(state, table_name);
  std::vector<Field> out;
  std::set<std::string> ids;
  for (const ColumnDef& c : def.columns) ids.insert(def.name + "." + c.name);

  for (const ColumnDef& c : def.columns) {
    out.push_back(base_field(state, def, c, language));
    const TableDef* target = display_target(state, c);
    if (!target) continue;
    const ColumnDef& shown = target->columns[*target->column_index(*target->display_column)];
    Field j = base_field(state, *target, shown, language);
    j.id = unique_id(target->name + "." + shown.name, ids);
    ids.insert(j.id);
    j.is_joined = true;
    j.is_display_field = true;
    j.is_editable = false;
    j.is_foreign_key = false;
    j.referenced_field.reset();
    j.referenced_table.reset();
    j.is_primary_key = false;
    j.is_auto_generated = false;
    j.is_nullable = true;
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<Reference> collect_references(const StoreState& state, const std::string& table_name,
                                          const std::optional<std::string>& language) {
  require_table(state, table_name);
  std::vector<Reference> out;
  for (const auto& [name, def] : state.catalog) {
    for (const ColumnDef& c : def.columns) {
      if (!c.fk_target || c.fk_target->table != table_name) continue;
      out.push_back(Reference{
          c.fk_target->column,
          table_name,
          c.name,
          localize(c.titles, language, state.default_language, c.name),
          name,
          localize(def.plural_titles, language, state.default_language, name),
      });
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Reference& a, const Reference& b) {
    return std::tie(a.ring_table, a.ring_field) < std::tie(b.ring_table, b.ring_field);
  });
  return out;
}

std::vector<Row> materialize_rows(const StoreState& state, const std::string& table_name) {
  const TableDef& def = require_table(state, table_name);

  struct Join {
    std::size_t fk_column;
    const TableDef* target;
    std::size_t display_index;
    std::unordered_map<std::string, std::size_t> keys;
  };
  std::vector<std::optional<Join>> joins(def.columns.size());
  for (std::size_t i = 0; i < def.columns.size(); ++i) {
    const TableDef* target = display_target(state, def.columns[i]);
    if (!target) continue;
    joins[i] = Join{i, target, *target->column_index(*target->display_column), key_index(state, *target)};
  }

  std::vector<Row> out;
  const auto& stored = rows_of(state, table_name);
  out.reserve(stored.size());
  for (const Row& row : stored) {
    Row wide;
    wide.reserve(row.size() * 2);
    for (std::size_t i = 0; i < def.columns.size(); ++i) {
      wide.push_back(row[i]);
      if (!joins[i]) continue;
      const Join& j = *joins[i];
      Cell shown;
      if (row[i]) {
        auto hit = j.keys.find(key_of(def.columns[i].data_type, *row[i]));
        if (hit != j.keys.end()) shown = rows_of(state, j.target->name)[hit->second][j.display_index];
      }
      wide.push_back(std::move(shown));
    }
    out.push_back(std::move(wide));
  }
  return out;
}

TableMessage read_table(const StoreState& state, const Principal& principal,
                        const ReadTableRequest& request) {
  const TableDef& def = require_table(state, request.table_name);
  if (!principal.allows(def.name, Action::Select))
    throw Error(ErrorCode::Forbidden, "SELECT on '" + def.name + "' is not granted");
  if (request.skip < 0 || request.take < 0)
    throw Error(ErrorCode::MalformedMessage, "Skip and Take must be non-negative");

  TableMessage out;
  out.fields = plan_fields(state, def.name, request.language);

  auto filter_ast = expr::parse_filter(request.filter_expression.value_or(""));
  auto order_spec = expr::parse_order(request.order_expression.value_or(""));
  std::optional<expr::BoundFilter> filter;
  if (filter_ast) filter = expr::bind(*filter_ast, out.fields);
  expr::BoundOrder order = expr::bind(order_spec, out.fields);

  std::vector<Row> rows = materialize_rows(state, def.name);
  if (filter) {
    std::erase_if(rows, [&](const Row& row) { return !expr::eval_filter(*filter, row); });
  }
  if (!order.empty()) {
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
      return expr::compare_rows(order, a, b) < 0;
    });
  }

  auto skip = static_cast<std::size_t>(std::min<std::int64_t>(request.skip, static_cast<std::int64_t>(rows.size())));
  auto first = rows.begin() + static_cast<std::ptrdiff_t>(skip);
  auto last = rows.end();
  if (request.take > 0 && request.take < rows.end() - first) last = first + request.take;
  out.items.assign(std::make_move_iterator(first), std::make_move_iterator(last));

  out.actions = principal.actions_on(def.name);
  out.header = TableHeader{
      def.name,
      localize(def.singular_titles, request.language, state.default_language, def.name),
      localize(def.plural_titles, request.language, state.default_language, def.name),
      def.description,
  };
  out.references = collect_references(state, def.name, request.language);
  return out;
}

SubmitResponse submit(StoreState& state, const Principal& principal, const SubmitRequest& request) {
  const TableDef& def = require_table(state, request.table_name);
  Action needed;
  switch (request.operation) {
    case static_cast<int>(SubmitOperation::Insert): needed = Action::Insert; break;
    case static_cast<int>(SubmitOperation::Update): needed = Action::Update; break;
    case static_cast<int>(SubmitOperation::Delete): needed = Action::Delete; break;
    default:
      throw Error(ErrorCode::BadOperation, "operation code " + std::to_string(request.operation) +
                                               " is not 1 (INSERT), 2 (UPDATE) or 3 (DELETE)");
  }
  if (!principal.allows(def.name, needed))
    throw Error(ErrorCode::Forbidden, "operation on '" + def.name + "' is not granted");
  if (request.data.size() != request.fields.size())
    throw Error(ErrorCode::BadOperation, "Data and Fields differ in length");

  ResolvedFields resolved = resolve_submit_fields(def, request);
  switch (needed) {
    case Action::Insert: return do_insert(state, def, resolved, request);
    case Action::Update: return do_update(state, def, resolved, request);
    default: return do_delete(state, def, resolved, request);
  }
}

std::vector<std::string> validate_row(const StoreState& state, const std::string& table,
                                      const NamedCells& cells, std::optional<std::size_t> replacing) {
  const TableDef& def = require_table(state, table);
  std::vector<std::string> out;
  Row row(def.columns.size());
  std::set<std::string> seen;
  for (const auto& [name, cell] : cells) {
    auto idx = def.column_index(name);
    if (!idx) {
      out.push_back(table + ": unknown column '" + name + "'");
      continue;
    }
    if (!seen.insert(name).second) out.push_back(table + "." + name + ": given more than once");
    row[*idx] = cell;
  }
  auto more = check_row(state, def, row, replacing);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::vector<std::string> audit_state(const StoreState& state) {
  std::vector<std::string> out;
  for (const auto& [name, def] : state.catalog) {
    const auto& rows = rows_of(state, name);
    std::size_t pk = def.primary_key_index();
    DataType pk_type = def.columns[pk].data_type;
    std::unordered_set<std::string> keys;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Row& row = rows[r];
      std::string at = name + " row " + std::to_string(r);
      if (row.size() != def.columns.size()) {
        out.push_back(at + ": has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(def.columns.size()));
        continue;
      }
      std::vector<std::string> cell_problems;
      for (std::size_t i = 0; i < def.columns.size(); ++i) check_cell(def, def.columns[i], row[i], cell_problems);
      for (auto& p : cell_problems) out.push_back(at + ": " + p);
      if (!cell_problems.empty()) continue;

      if (!keys.insert(key_of(pk_type, *row[pk])).second)
        out.push_back(at + ": duplicate primary key '" + *row[pk] + "'");

      for (std::size_t i = 0; i < def.columns.size(); ++i) {
        const ColumnDef& c = def.columns[i];
        if (!c.fk_target || !row[i]) continue;
        const TableDef* target = state.find_table(c.fk_target->table);
        if (!target || !find_row_by_key(state, *target, key_of(c.data_type, *row[i])))
          out.push_back(at + ": dangling foreign key " + name + "." + c.name + " = '" + *row[i] + "'");
      }
      if (auto id = def.identity_index()) {
        auto counter = state.identity_counters.find(name);
        auto v = parse_integer_cell(*row[*id], def.columns[*id].data_type);
        if (counter == state.identity_counters.end() || (v && *v >= counter->second))
          out.push_back(at + ": identity counter not past existing key '" + *row[*id] + "'");
      }
    }
  }
  for (const auto& [user, record] : state.users) {
    for (const auto& [table, codes] : record.grants) {
      if (!state.catalog.contains(table))
        out.push_back("user '" + user + "': grant on unknown table '" + table + "'");
      for (int code : codes)
        if (code < 1 || code > 4)
          out.push_back("user '" + user + "': grant code " + std::to_string(code) + " not in 1..4");
    }
  }
  return out;
}

std::string state_digest(const StoreState& state) {
  std::string text = encode_fixture(to_fixture(state));
  for (const auto& [table, next] : state.identity_counters)
    text += "\n" + table + "=" + std::to_string(next);
  return sha256_hex(text);
}

}  // namespace rsp::engine
