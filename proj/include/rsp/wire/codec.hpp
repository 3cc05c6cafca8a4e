#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rsp/wire/types.hpp"

namespace rsp {

/// Canonical JSON encoding. Member names are the PascalCase attribute names
/// of the protocol, emitted in a fixed order; absent optionals are omitted and
/// null cells become JSON null. Throws InvariantViolation if the message
/// fails validate_message().
std::string encode(const TableHeader& header);
std::string encode(const Field& field);
std::string encode(const Reference& reference);
std::string encode(const TableMessage& table);
std::string encode(const ReadTableHeadersRequest& message);
std::string encode(const ReadTableHeadersResponse& message);
std::string encode(const ReadTableRequest& message);
std::string encode(const ReadTableResponse& message);
std::string encode(const SubmitRequest& message);
std::string encode(const SubmitResponse& message);
std::string encode(const ErrorEnvelope& message);
std::string encode(const Message& message);

/// Strict decoding. Unknown members are ignored. Missing REQUIRED members,
/// wrong primitive types, invalid JSON and invariant violations raise
/// Error(MalformedMessage); an out-of-range SubmitRequest operation code
/// raises Error(BadOperation).
Message decode(MessageKind kind, std::string_view text);

template <typename T>
T decode_as(std::string_view text);

template <> ReadTableHeadersRequest decode_as(std::string_view text);
template <> ReadTableHeadersResponse decode_as(std::string_view text);
template <> ReadTableRequest decode_as(std::string_view text);
template <> ReadTableResponse decode_as(std::string_view text);
template <> SubmitRequest decode_as(std::string_view text);
template <> SubmitResponse decode_as(std::string_view text);
template <> ErrorEnvelope decode_as(std::string_view text);
template <> TableHeader decode_as(std::string_view text);
template <> Field decode_as(std::string_view text);
template <> Reference decode_as(std::string_view text);
template <> TableMessage decode_as(std::string_view text);

/// One entry per broken invariant, each naming the offending attribute by its
/// wire name (e.g. "ReferencedTable", "Items[2]").
struct Violation {
  std::string attribute;
  std::string description;

  bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_message(const TableHeader& header);
std::vector<Violation> validate_message(const Field& field);
std::vector<Violation> validate_message(const Reference& reference);
std::vector<Violation> validate_message(const TableMessage& table);
std::vector<Violation> validate_message(const ReadTableHeadersRequest& message);
std::vector<Violation> validate_message(const ReadTableHeadersResponse& message);
std::vector<Violation> validate_message(const ReadTableRequest& message);
std::vector<Violation> validate_message(const ReadTableResponse& message);
std::vector<Violation> validate_message(const SubmitRequest& message);
std::vector<Violation> validate_message(const SubmitResponse& message);
std::vector<Violation> validate_message(const ErrorEnvelope& message);
std::vector<Violation> validate_message(const Message& message);

/// Wire name of every REQUIRED top-level member of a message kind, in
/// encoding order.
std::vector<std::string> required_members(MessageKind kind);

}  // namespace rsp
