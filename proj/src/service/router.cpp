#include "rsp/service/router.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "rsp/wire/codec.hpp"

namespace rsp::service {

int status_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedMessage:
    case ErrorCode::BadExpression:
    case ErrorCode::UnknownField:
    case ErrorCode::BadOperation:
      return 400;
    case ErrorCode::AuthFailed:
      return 401;
    case ErrorCode::Forbidden:
      return 403;
    case ErrorCode::UnknownTable:
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::ConstraintViolation:
      return 409;
  }
  return 400;
}

std::pair<int, ErrorEnvelope> map_error(const Error& error) {
  return {status_for(error.code()), ErrorEnvelope{error.code(), error.what()}};
}

namespace {

HttpResponse envelope(int status, ErrorCode code, std::string message) {
  return {status, encode(ErrorEnvelope{code, std::move(message)})};
}

}  // namespace

Router::Router(std::shared_ptr<engine::Provider> provider, std::shared_ptr<spdlog::logger> logger)
    : provider_(std::move(provider)), logger_(std::move(logger)) {}

HttpResponse Router::dispatch(std::string_view method, std::string_view path, std::string_view body,
                              std::string& user) {
  bool known = path == kReadTableHeadersPath || path == kReadTablePath || path == kSubmitPath;
  if (!known) return envelope(404, ErrorCode::MalformedMessage, "no such endpoint");
  if (method != "POST") return envelope(405, ErrorCode::MalformedMessage, "only POST is supported");

  if (path == kReadTableHeadersPath) {
    auto request = decode_as<ReadTableHeadersRequest>(body);
    user = request.user_name;
    return {200, encode(provider_->read_table_headers(request))};
  }
  if (path == kReadTablePath) {
    auto request = decode_as<ReadTableRequest>(body);
    user = request.user_name;
    return {200, encode(provider_->read_table(request))};
  }
  auto request = decode_as<SubmitRequest>(body);
  user = request.user_name;
  return {200, encode(provider_->submit(request))};
}

HttpResponse Router::route(std::string_view method, std::string_view path, std::string_view body) {
  auto started = std::chrono::steady_clock::now();
  std::string user;
  HttpResponse response;
  std::string detail;
  try {
    response = dispatch(method, path, body, user);
  } catch (const Error& e) {
    auto [status, env] = map_error(e);
    response = {status, encode(env)};
    detail = e.what();
  } catch (const std::exception& e) {
    // Provider-side faults (corrupt state, encoder invariant). Not a peer error;
    // the body stays generic.
    response = envelope(500, ErrorCode::MalformedMessage, "internal error");
    detail = e.what();
  }

  if (logger_) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    nlohmann::ordered_json line;
    line["user"] = user;
    line["method"] = std::string(method);
    line["path"] = std::string(path);
    line["status"] = response.status;
    line["duration_ms"] = std::round(ms * 1000) / 1000;
    auto level = response.status >= 500 ? spdlog::level::err : spdlog::level::info;
    if (!detail.empty() && (logger_->should_log(spdlog::level::debug) || response.status >= 500))
      line["error"] = detail;
    // Replacement keeps one line per exchange even for invalid UTF-8 input.
    logger_->log(level, "{}", line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
  }
  return response;
}

}  // namespace rsp::service
