#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rsp/wire/error.hpp"
#include "rsp/wire/types.hpp"

namespace rsp::client {

struct ClientConfig {
  /// `http://host:port` or `https://host:port`, optionally followed by a path
  /// prefix that is prepended to the endpoint paths.
  std::string base_url;
  std::string user_name;
  std::string password;
  std::optional<std::string> language;
  std::chrono::milliseconds timeout{10000};
  /// PEM bundle used to verify the server; system store when absent.
  std::optional<std::string> ca_cert_path;
  bool verify_tls = true;
};

/// The server could not be reached or the exchange was cut short.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The server answered with something that is not a valid protocol message.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The server answered with an error envelope.
class RemoteError : public std::runtime_error {
 public:
  RemoteError(ErrorCode code, int status, const std::string& message)
      : std::runtime_error(message), code_(code), status_(status) {}

  ErrorCode code() const noexcept { return code_; }
  int status() const noexcept { return status_; }

 private:
  ErrorCode code_;
  int status_;
};

struct ReadOptions {
  std::int64_t skip = 0;
  std::int64_t take = 0;
  std::optional<std::string> filter;
  std::optional<std::string> order;
};

/// Raw result of one POST, before any decoding.
struct RawResponse {
  int status = 0;
  std::string content_type;
  std::string body;
};

class Client;

/// Rows of a table fetched page by page on demand. The stream ends at the
/// first page shorter than the page size.
class RowStream {
 public:
  RowStream(Client& client, std::string table, ReadOptions options, std::int64_t page_size);

  /// Next row, or nullopt at the end. Fetches a page when the buffer is empty.
  std::optional<Row> next();
  /// Metadata of the first page fetched; empty before the first next().
  const TableHeader& header() const { return header_; }
  const std::vector<Field>& fields() const { return fields_; }
  const std::vector<Reference>& references() const { return references_; }
  const std::vector<int>& actions() const { return actions_; }
  std::size_t pages_fetched() const { return pages_; }

 private:
  Client* client_;
  std::string table_;
  ReadOptions options_;
  std::int64_t page_size_;
  TableHeader header_;
  std::vector<Field> fields_;
  std::vector<Reference> references_;
  std::vector<int> actions_;
  std::vector<Row> buffer_;
  std::size_t position_ = 0;
  std::size_t pages_ = 0;
  bool exhausted_ = false;
};

/// Calls from several threads on one instance are safe; they share one
/// connection and are sent one at a time.
class Client {
 public:
  /// Throws std::invalid_argument unless the base URL is http or https.
  explicit Client(ClientConfig config);
  ~Client();
  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  std::vector<TableHeader> fetch_headers();
  TableMessage fetch_table(const std::string& table, const ReadOptions& options = {});
  RowStream fetch_all_rows(const std::string& table, ReadOptions options = {}, std::int64_t page_size = 100);

  /// Returns the generated identity for INSERTs into identity tables.
  std::optional<std::string> submit(const std::string& table, SubmitOperation operation,
                                    const std::vector<std::pair<std::string, Cell>>& cells);

  /// POSTs `body` to `path` (relative to the base URL) without interpreting
  /// the reply. Throws TransportError only.
  RawResponse post(const std::string& path, const std::string& body);

  const ClientConfig& config() const { return config_; }

 private:
  template <typename Response>
  Response exchange(const std::string& path, const std::string& body);

  ClientConfig config_;
  std::string prefix_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rsp::client
