#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rsp/wire/cell.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::engine {

/// language code -> display text
using LocalizedText = std::map<std::string, std::string>;

struct ForeignKey {
  std::string table;
  std::string column;
  bool operator==(const ForeignKey&) const = default;
};

struct ColumnDef {
  std::string name;
  DataType data_type = DataType::Text;
  bool nullable = true;
  bool primary_key = false;
  bool auto_generated = false;
  bool editable = true;
  std::optional<std::int64_t> max_length;
  std::optional<ForeignKey> fk_target;
  LocalizedText titles;
  std::optional<std::string> description;

  bool operator==(const ColumnDef&) const = default;
};

struct TableDef {
  std::string name;
  LocalizedText singular_titles;
  LocalizedText plural_titles;
  std::optional<std::string> description;
  std::vector<ColumnDef> columns;
  std::optional<std::string> display_column;

  std::optional<std::size_t> column_index(std::string_view column) const;
  /// Index of the single primary-key column.
  std::size_t primary_key_index() const;
  /// Index of the auto-generated column, if the table has one.
  std::optional<std::size_t> identity_index() const;

  bool operator==(const TableDef&) const = default;
};

using ActionSet = std::set<int>;

/// An authenticated user and its per-table grants.
struct Principal {
  std::string user_name;
  std::map<std::string, ActionSet> grants;

  bool allows(const std::string& table, Action action) const;
  /// Grant codes for `table`, ascending.
  std::vector<int> actions_on(const std::string& table) const;

  bool operator==(const Principal&) const = default;
};

struct UserRecord {
  std::string password_hash;
  std::string salt;
  std::map<std::string, ActionSet> grants;

  bool operator==(const UserRecord&) const = default;
};

/// Everything a provider holds. Rows store one canonical nullable cell per
/// column, in catalog column order; row order is insertion order.
struct StoreState {
  std::map<std::string, TableDef> catalog;
  std::map<std::string, std::vector<Row>> rows;
  std::map<std::string, std::int64_t> identity_counters;
  std::map<std::string, UserRecord> users;
  std::string default_language = "en";

  const TableDef* find_table(std::string_view name) const;

  bool operator==(const StoreState&) const = default;
};

/// Value used to match primary keys against foreign keys: numeric cells are
/// normalized so that equal values give equal keys.
std::string key_of(DataType type, const std::string& cell);

/// Title lookup with the chain: requested language, then the default
/// language, then `fallback`.
std::string localize(const LocalizedText& text, const std::optional<std::string>& language,
                     const std::string& default_language, const std::string& fallback);

}  // namespace rsp::engine
