#include "rsp/wire/types.hpp"

#include <array>

namespace rsp {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 9> kErrorCodeNames{{
    {ErrorCode::AuthFailed, "AuthFailed"},
    {ErrorCode::Forbidden, "Forbidden"},
    {ErrorCode::UnknownTable, "UnknownTable"},
    {ErrorCode::UnknownField, "UnknownField"},
    {ErrorCode::BadExpression, "BadExpression"},
    {ErrorCode::BadOperation, "BadOperation"},
    {ErrorCode::ConstraintViolation, "ConstraintViolation"},
    {ErrorCode::NotFound, "NotFound"},
    {ErrorCode::MalformedMessage, "MalformedMessage"},
}};

constexpr std::array<std::pair<MessageKind, std::string_view>, 7> kKindNames{{
    {MessageKind::ReadTableHeadersRequest, "ReadTableHeadersRequest"},
    {MessageKind::ReadTableHeadersResponse, "ReadTableHeadersResponse"},
    {MessageKind::ReadTableRequest, "ReadTableRequest"},
    {MessageKind::ReadTableResponse, "ReadTableResponse"},
    {MessageKind::SubmitRequest, "SubmitRequest"},
    {MessageKind::SubmitResponse, "SubmitResponse"},
    {MessageKind::ErrorEnvelope, "ErrorEnvelope"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  for (const auto& [c, name] : kErrorCodeNames)
    if (c == code) return name;
  return "MalformedMessage";
}

std::optional<ErrorCode> parse_error_code(std::string_view text) noexcept {
  for (const auto& [c, name] : kErrorCodeNames)
    if (name == text) return c;
  return std::nullopt;
}

MessageKind kind_of(const Message& message) noexcept {
  return static_cast<MessageKind>(message.index());
}

std::string_view to_string(MessageKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<MessageKind> parse_message_kind(std::string_view text) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

}  // namespace rsp
