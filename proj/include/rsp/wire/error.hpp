#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsp {

/// Error codes carried by ErrorEnvelope. The set is closed: a remote peer
/// never sees a code outside of it.
enum class ErrorCode {
  AuthFailed,
  Forbidden,
  UnknownTable,
  UnknownField,
  BadExpression,
  BadOperation,
  ConstraintViolation,
  NotFound,
  MalformedMessage,
};

std::string_view to_string(ErrorCode code) noexcept;
std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept;

/// A protocol-level failure. Everything the engine, codec or expression layer
/// reports to a remote caller goes through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by encode() when a message fails its own invariants. Indicates a
/// bug on the producing side, never a peer error.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A stored cell that does not parse under its column's canonical encoding.
class CorruptCell : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rsp
