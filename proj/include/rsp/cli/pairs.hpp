#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/wire/types.hpp"

namespace rsp::cli {

/// Bad command-line input; maps to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubmitPairs {
  std::vector<std::string> names;
  std::vector<Cell> data;

  bool operator==(const SubmitPairs&) const = default;
};

/// Parses `name=value` (value may be empty) and `name:=null` in order.
/// Throws UsageError on a missing `=`, an empty name, a `:=` other than
/// `:=null`, or a repeated name.
SubmitPairs submit_from_pairs(const std::vector<std::string>& pairs);

std::optional<SubmitOperation> parse_operation(std::string_view text);

}  // namespace rsp::cli
