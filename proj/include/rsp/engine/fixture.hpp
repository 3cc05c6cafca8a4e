#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/engine/state.hpp"

namespace rsp::engine {

/// Raised when a fixture cannot be loaded. The message names the first
/// violated invariant.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixtureTable {
  TableDef definition;
  std::vector<Row> rows;
};

/// Either PasswordHash+Salt, or a plaintext Password that is hashed on load.
struct FixtureUser {
  std::string user_name;
  std::optional<std::string> password_hash;
  std::optional<std::string> salt;
  std::optional<std::string> password;
  std::map<std::string, ActionSet> grants;
};

/// In-memory form of the fixture file:
///
///   {"DefaultLanguage": "en",
///    "Tables": [{"Name", "SingularTitles", "PluralTitles", "Description"?,
///                "DisplayColumn"?, "Columns": [...], "Rows": [[...]]}],
///    "Users": [{"UserName", "PasswordHash", "Salt", "Grants": {table: [codes]}}]}
struct FixtureDocument {
  std::string default_language = "en";
  std::vector<FixtureTable> tables;
  std::vector<FixtureUser> users;
};

/// Structural parse only; invariants are checked by load_fixture_state.
FixtureDocument parse_fixture(std::string_view json_text);
FixtureDocument read_fixture_file(const std::filesystem::path& path);

/// Builds a StoreState and checks every catalog and row invariant. Identity
/// counters start at one past the largest existing key (1 for empty tables).
StoreState load_fixture_state(const FixtureDocument& fixture);

/// Inverse of load_fixture_state (users carry hash and salt). Tables in
/// name order.
FixtureDocument to_fixture(const StoreState& state);

/// Canonical JSON text of a fixture document.
std::string encode_fixture(const FixtureDocument& fixture);

}  // namespace rsp::engine
