#pragma once

// Random request generation over a live engine state.

#include <optional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "rsp/engine/state.hpp"
#include "rsp/expression/ast.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::testing {

const engine::TableDef& random_table(Rng& rng, const engine::StoreState& state);
std::optional<std::string> random_existing_key(Rng& rng, const engine::StoreState& state, const std::string& table);
/// Mostly valid cell for `c`; occasionally null, malformed, or a dangling key.
Cell random_value(Rng& rng, const engine::StoreState& state, const engine::ColumnDef& c);
/// Submit of operation `op` (1..3) against `def`, without credentials. Mostly
/// valid; a minority violates types, keys or editability.
SubmitRequest random_submit(Rng& rng, const engine::StoreState& state, const engine::TableDef& def, int op);

/// Joined rows built without the engine's join code: every joined field sits
/// right after its FK column and shows the target row's display cell.
std::vector<Row> oracle_materialize(const engine::StoreState& state, const std::string& table,
                                    const std::vector<Field>& fields);

/// Random filter/order that binds against `fields` (joined fields included).
std::optional<expr::FilterAst> random_bindable_filter(Rng& rng, const std::vector<Field>& fields);
expr::OrderSpec random_bindable_order(Rng& rng, const std::vector<Field>& fields);

/// ReadTableRequest without credentials.
ReadTableRequest read_request(const std::string& table, const std::optional<expr::FilterAst>& filter,
                              const expr::OrderSpec& order);

}  // namespace rsp::testing
