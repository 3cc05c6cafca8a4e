#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "rsp/engine/provider.hpp"
#include "rsp/wire/types.hpp"

namespace spdlog {
class logger;
}

namespace rsp::service {

inline constexpr std::string_view kContentType = "application/json; charset=utf-8";

inline constexpr std::string_view kReadTableHeadersPath = "/rsp/ReadTableHeaders";
inline constexpr std::string_view kReadTablePath = "/rsp/ReadTable";
inline constexpr std::string_view kSubmitPath = "/rsp/Submit";

struct HttpResponse {
  int status = 200;
  std::string body;
};

int status_for(ErrorCode code) noexcept;

/// Status and envelope for a domain error. The envelope carries the error's
/// message, which never contains request credentials.
std::pair<int, ErrorEnvelope> map_error(const Error& error);

/// Transport-independent request dispatch. Every response body is either the
/// operation's response message (status 200) or an ErrorEnvelope (status
/// >= 400). Logs one line per exchange; credentials are never logged.
class Router {
 public:
  explicit Router(std::shared_ptr<engine::Provider> provider, std::shared_ptr<spdlog::logger> logger = nullptr);

  HttpResponse route(std::string_view method, std::string_view path, std::string_view body);

  engine::Provider& provider() { return *provider_; }

 private:
  HttpResponse dispatch(std::string_view method, std::string_view path, std::string_view body, std::string& user);

  std::shared_ptr<engine::Provider> provider_;
  std::shared_ptr<spdlog::logger> logger_;
};

}  // namespace rsp::service
