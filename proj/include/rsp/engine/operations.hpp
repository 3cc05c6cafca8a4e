#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsp/engine/state.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::engine {

/// Headers of every table the principal holds SELECT on, sorted by name.
std::vector<TableHeader> read_table_headers(const StoreState& state, const Principal& principal,
                                            const std::optional<std::string>& language);

/// Base columns in catalog order, each FK column followed by one joined field
/// for the referenced table's display column (if it declares one). Throws
/// Error(UnknownTable).
std::vector<Field> plan_fields(const StoreState& state, const std::string& table_name,
                               const std::optional<std::string>& language);

/// Incoming FK edges of `table_name`, ordered by (ring table, ring field).
/// Throws Error(UnknownTable).
std::vector<Reference> collect_references(const StoreState& state, const std::string& table_name,
                                          const std::optional<std::string>& language);

/// Every stored row of `table_name` extended with its joined display cells,
/// in insertion order, aligned with plan_fields().
std::vector<Row> materialize_rows(const StoreState& state, const std::string& table_name);

/// Authorize, plan, join, filter, stable-sort, then apply Skip and Take
/// (Take 0 means all remaining rows).
TableMessage read_table(const StoreState& state, const Principal& principal,
                        const ReadTableRequest& request);

/// Applies one INSERT, UPDATE or DELETE. The state is only modified if every
/// check passes.
SubmitResponse submit(StoreState& state, const Principal& principal, const SubmitRequest& request);

using NamedCells = std::vector<std::pair<std::string, Cell>>;

/// Checks a candidate row for `table`. Columns missing from `cells` count as
/// NULL. `replacing` is the index of the stored row being rewritten (skipped
/// by the primary-key uniqueness check). Returns one message per violation.
std::vector<std::string> validate_row(const StoreState& state, const std::string& table,
                                      const NamedCells& cells,
                                      std::optional<std::size_t> replacing = std::nullopt);

/// Full-state invariant check: row shapes, cell encodings, nullability,
/// lengths, PK uniqueness, dangling FKs, identity counters, grants.
std::vector<std::string> audit_state(const StoreState& state);

/// Hex SHA-256 over the canonical encoding of the whole state, including
/// identity counters.
std::string state_digest(const StoreState& state);

}  // namespace rsp::engine
