#include "rsp/cli/pairs.hpp"

#include <set>

namespace rsp::cli {

SubmitPairs submit_from_pairs(const std::vector<std::string>& pairs) {
  SubmitPairs out;
  std::set<std::string> seen;
  for (const std::string& pair : pairs) {
    std::size_t eq = pair.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value or name:=null, got '" + pair + "'");
    std::string name;
    Cell value;
    if (eq > 0 && pair[eq - 1] == ':') {
      name = pair.substr(0, eq - 1);
      if (pair.substr(eq + 1) != "null")
        throw UsageError("'" + pair + "': ':=' only accepts null; use name=value for text");
    } else {
      name = pair.substr(0, eq);
      value = pair.substr(eq + 1);
    }
    if (name.empty()) throw UsageError("'" + pair + "' has an empty column name");
    if (!seen.insert(name).second) throw UsageError("column '" + name + "' is given more than once");
    out.names.push_back(std::move(name));
    out.data.push_back(std::move(value));
  }
  return out;
}

std::optional<SubmitOperation> parse_operation(std::string_view text) {
  if (text == "insert") return SubmitOperation::Insert;
  if (text == "update") return SubmitOperation::Update;
  if (text == "delete") return SubmitOperation::Delete;
  return std::nullopt;
}

}  // namespace rsp::cli
