#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string_view>

#include "rsp/service/config.hpp"
#include "rsp/service/router.hpp"

namespace rsp::service {

/// Raised by serve() before any listener exists: invalid config, fixture that
/// fails to load, unusable TLS material, or an address that cannot be bound.
class StartupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ServeOptions {
  /// Destination for startup and exchange log lines; a stderr logger at the
  /// configured level when null.
  std::shared_ptr<spdlog::logger> logger;
  /// Called on the worker thread before each request is routed.
  std::function<void(std::string_view path)> before_route;
};

/// A listening service. Destruction performs stop().
class RunningService {
 public:
  virtual ~RunningService() = default;

  virtual int port() const = 0;
  virtual bool tls() const = 0;
  virtual engine::Provider& provider() = 0;

  /// Closes the listener, lets in-flight requests complete, then returns.
  /// Idempotent.
  virtual void stop() = 0;
};

std::shared_ptr<spdlog::logger> make_logger(LogLevel level);

std::unique_ptr<RunningService> serve(const ServiceConfig& config, ServeOptions options = {});

}  // namespace rsp::service
