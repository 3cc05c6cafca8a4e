#include "rsp/client/client.hpp"

#include <httplib.h>

#include "rsp/wire/codec.hpp"

namespace rsp::client {

struct Client::Impl {
  std::unique_ptr<httplib::Client> http;
};

namespace {

// Splits `scheme://authority/prefix` into (`scheme://authority`, `/prefix`).
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw std::invalid_argument("base URL must start with http:// or https://");
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw std::invalid_argument("unsupported URL scheme '" + scheme + "'");
  std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

}  // namespace

Client::Client(ClientConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  auto [origin, prefix] = split_base_url(config_.base_url);
  prefix_ = prefix;
  impl_->http = std::make_unique<httplib::Client>(origin);
  if (!impl_->http->is_valid()) throw std::invalid_argument("invalid base URL " + origin);
  auto seconds = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout);
  impl_->http->set_connection_timeout(seconds);
  impl_->http->set_read_timeout(seconds);
  impl_->http->set_write_timeout(seconds);
  impl_->http->set_keep_alive(true);
  impl_->http->set_tcp_nodelay(true);
  if (config_.ca_cert_path) impl_->http->set_ca_cert_path(*config_.ca_cert_path);
  impl_->http->enable_server_certificate_verification(config_.verify_tls);
}

Client::~Client() = default;

RawResponse Client::post(const std::string& path, const std::string& body) {
  auto result = impl_->http->Post(prefix_ + path, body, "application/json; charset=utf-8");
  if (!result) {
    std::string reason = httplib::to_string(result.error());
    throw TransportError("request to " + config_.base_url + path + " failed: " + reason);
  }
  return {result->status, result->get_header_value("Content-Type"), result->body};
}

template <typename Response>
Response Client::exchange(const std::string& path, const std::string& body) {
  RawResponse raw = post(path, body);
  if (raw.status == 200) {
    try {
      return decode_as<Response>(raw.body);
    } catch (const Error& e) {
      throw ProtocolError(std::string("invalid response body: ") + e.what());
    }
  }
  if (raw.status >= 400) {
    ErrorEnvelope envelope;
    try {
      envelope = decode_as<ErrorEnvelope>(raw.body);
    } catch (const Error&) {
      throw ProtocolError("HTTP " + std::to_string(raw.status) + " without an error envelope");
    }
    throw RemoteError(envelope.code, raw.status, envelope.message);
  }
  throw ProtocolError("unexpected HTTP status " + std::to_string(raw.status));
}

std::vector<TableHeader> Client::fetch_headers() {
  ReadTableHeadersRequest request{config_.user_name, config_.password, config_.language};
  return exchange<ReadTableHeadersResponse>("/rsp/ReadTableHeaders", encode(request)).table_headers;
}

TableMessage Client::fetch_table(const std::string& table, const ReadOptions& options) {
  ReadTableRequest request;
  request.user_name = config_.user_name;
  request.password = config_.password;
  request.table_name = table;
  request.language = config_.language;
  request.skip = options.skip;
  request.take = options.take;
  request.order_expression = options.order;
  request.filter_expression = options.filter;
  return exchange<ReadTableResponse>("/rsp/ReadTable", encode(request)).table;
}

RowStream Client::fetch_all_rows(const std::string& table, ReadOptions options, std::int64_t page_size) {
  return RowStream(*this, table, std::move(options), page_size);
}

std::optional<std::string> Client::submit(const std::string& table, SubmitOperation operation,
                                          const std::vector<std::pair<std::string, Cell>>& cells) {
  SubmitRequest request;
  request.user_name = config_.user_name;
  request.password = config_.password;
  request.table_name = table;
  request.operation = static_cast<int>(operation);
  for (const auto& [name, value] : cells) {
    // The server matches by Name only; the other attributes are placeholders.
    Field f;
    f.data_type = "text";
    f.id = table + "." + name;
    f.name = name;
    f.table = table;
    f.title = name;
    f.is_editable = true;
    f.is_nullable = true;
    request.fields.push_back(std::move(f));
    request.data.push_back(value);
  }
  return exchange<SubmitResponse>("/rsp/Submit", encode(request)).identity;
}

RowStream::RowStream(Client& client, std::string table, ReadOptions options, std::int64_t page_size)
    : client_(&client), table_(std::move(table)), options_(std::move(options)), page_size_(page_size) {
  if (page_size_ < 1) throw std::invalid_argument("page size must be positive");
}

std::optional<Row> RowStream::next() {
  if (position_ == buffer_.size()) {
    if (exhausted_) return std::nullopt;
    ReadOptions page = options_;
    page.take = page_size_;
    TableMessage t = client_->fetch_table(table_, page);
    if (pages_++ == 0) {
      header_ = std::move(t.header);
      fields_ = std::move(t.fields);
      references_ = std::move(t.references);
      actions_ = std::move(t.actions);
    }
    buffer_ = std::move(t.items);
    position_ = 0;
    options_.skip += static_cast<std::int64_t>(buffer_.size());
    if (static_cast<std::int64_t>(buffer_.size()) < page_size_) exhausted_ = true;
    if (buffer_.empty()) return std::nullopt;
  }
  return std::move(buffer_[position_++]);
}

}  // namespace rsp::client
