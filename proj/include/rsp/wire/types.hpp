#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rsp/wire/error.hpp"

namespace rsp {

/// A nullable cell. std::nullopt is NULL; the empty string is a value.
using Cell = std::optional<std::string>;
using Row = std::vector<Cell>;

/// Access rights carried in TableMessage::actions.
enum class Action : int { Select = 1, Insert = 2, Update = 3, Delete = 4 };

/// Submit operation codes. Note these differ from the Action numbering.
enum class SubmitOperation : int { Insert = 1, Update = 2, Delete = 3 };

struct TableHeader {
  std::string table_name;
  std::string singular_title;
  std::string plural_title;
  std::optional<std::string> description;

  bool operator==(const TableHeader&) const = default;
};

/// Column metadata. Member order follows the wire order.
struct Field {
  std::string data_type;
  std::optional<std::string> description;
  std::string id;
  bool is_auto_generated = false;
  bool is_display_field = false;
  bool is_editable = false;
  bool is_foreign_key = false;
  bool is_joined = false;
  bool is_nullable = false;
  bool is_primary_key = false;
  std::optional<std::int64_t> max_length;
  std::string name;
  std::optional<std::string> referenced_field;
  std::optional<std::string> referenced_table;
  std::string table;
  std::string title;

  bool operator==(const Field&) const = default;
};

/// An incoming foreign-key edge: ring_table.ring_field points at
/// red_table.red_field.
struct Reference {
  std::string red_field;
  std::string red_table;
  std::string ring_field;
  std::string ring_field_title;
  std::string ring_table;
  std::string ring_table_plural_title;

  bool operator==(const Reference&) const = default;
};

struct TableMessage {
  std::vector<int> actions;
  std::vector<Field> fields;
  TableHeader header;
  std::vector<Row> items;
  std::vector<Reference> references;

  bool operator==(const TableMessage&) const = default;
};

struct ReadTableHeadersRequest {
  std::string user_name;
  std::string password;
  std::optional<std::string> language;

  bool operator==(const ReadTableHeadersRequest&) const = default;
};

struct ReadTableHeadersResponse {
  std::vector<TableHeader> table_headers;

  bool operator==(const ReadTableHeadersResponse&) const = default;
};

struct ReadTableRequest {
  std::string user_name;
  std::string password;
  std::string table_name;
  std::optional<std::string> language;
  std::int64_t skip = 0;
  std::int64_t take = 0;
  std::optional<std::string> order_expression;
  std::optional<std::string> filter_expression;

  bool operator==(const ReadTableRequest&) const = default;
};

struct ReadTableResponse {
  TableMessage table;

  bool operator==(const ReadTableResponse&) const = default;
};

struct SubmitRequest {
  std::string user_name;
  std::string password;
  std::string table_name;
  int operation = 0;
  std::vector<Field> fields;
  Row data;

  bool operator==(const SubmitRequest&) const = default;
};

struct SubmitResponse {
  std::optional<std::string> identity;

  bool operator==(const SubmitResponse&) const = default;
};

struct ErrorEnvelope {
  ErrorCode code = ErrorCode::MalformedMessage;
  std::string message;

  bool operator==(const ErrorEnvelope&) const = default;
};

/// Tags for the top-level messages that travel on the wire.
enum class MessageKind {
  ReadTableHeadersRequest,
  ReadTableHeadersResponse,
  ReadTableRequest,
  ReadTableResponse,
  SubmitRequest,
  SubmitResponse,
  ErrorEnvelope,
};

using Message = std::variant<ReadTableHeadersRequest, ReadTableHeadersResponse,
                             ReadTableRequest, ReadTableResponse, SubmitRequest,
                             SubmitResponse, ErrorEnvelope>;

MessageKind kind_of(const Message& message) noexcept;
std::string_view to_string(MessageKind kind) noexcept;
std::optional<MessageKind> parse_message_kind(std::string_view text) noexcept;

}  // namespace rsp
