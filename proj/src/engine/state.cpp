#include "rsp/engine/state.hpp"

#include <stdexcept>

namespace rsp::engine {

std::optional<std::size_t> TableDef::column_index(std::string_view column) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == column) return i;
  return std::nullopt;
}

std::size_t TableDef::primary_key_index() const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].primary_key) return i;
  throw std::logic_error("table '" + name + "' has no primary key");
}

std::optional<std::size_t> TableDef::identity_index() const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].auto_generated) return i;
  return std::nullopt;
}

bool Principal::allows(const std::string& table, Action action) const {
  auto it = grants.find(table);
  return it != grants.end() && it->second.contains(static_cast<int>(action));
}

std::vector<int> Principal::actions_on(const std::string& table) const {
  auto it = grants.find(table);
  if (it == grants.end()) return {};
  return {it->second.begin(), it->second.end()};
}

const TableDef* StoreState::find_table(std::string_view name) const {
  auto it = catalog.find(std::string(name));
  return it == catalog.end() ? nullptr : &it->second;
}

std::string key_of(DataType type, const std::string& cell) {
  switch (type) {
    case DataType::Int:
    case DataType::Long:
      if (auto v = parse_integer_cell(cell, type)) return std::to_string(*v);
      break;
    case DataType::Decimal:
      if (auto v = Decimal::parse(cell)) return v->to_string();
      break;
    default:
      break;
  }
  return cell;
}

std::string localize(const LocalizedText& text, const std::optional<std::string>& language,
                     const std::string& default_language, const std::string& fallback) {
  if (language) {
    if (auto it = text.find(*language); it != text.end()) return it->second;
  }
  if (auto it = text.find(default_language); it != text.end()) return it->second;
  return fallback;
}

}  // namespace rsp::engine
