#include "rsp/service/server.hpp"

#include <sys/socket.h>

#include <filesystem>
#include <thread>

#include <httplib.h>
#include <spdlog/pattern_formatter.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "rsp/engine/fixture.hpp"
#include "rsp/wire/codec.hpp"

namespace rsp::service {

std::shared_ptr<spdlog::logger> make_logger(LogLevel level) {
  auto logger = std::make_shared<spdlog::logger>("rsp", std::make_shared<spdlog::sinks::stderr_sink_mt>());
  logger->set_formatter(
      std::make_unique<spdlog::pattern_formatter>("%Y-%m-%dT%H:%M:%S.%eZ %l %v", spdlog::pattern_time_type::utc));
  switch (level) {
    case LogLevel::Error: logger->set_level(spdlog::level::err); break;
    case LogLevel::Info: logger->set_level(spdlog::level::info); break;
    case LogLevel::Debug: logger->set_level(spdlog::level::debug); break;
  }
  return logger;
}

namespace {

class HttpService final : public RunningService {
 public:
  HttpService(std::unique_ptr<httplib::Server> server, std::shared_ptr<Router> router, bool tls,
              std::shared_ptr<spdlog::logger> logger)
      : server_(std::move(server)), router_(std::move(router)), tls_(tls), logger_(std::move(logger)) {}

  ~HttpService() override { stop(); }

  void start(const ListenAddress& address) {
    if (address.port == 0) {
      port_ = server_->bind_to_any_port(address.host);
      if (port_ < 0) throw StartupError("cannot bind " + address.host + ":0");
    } else {
      if (!server_->bind_to_port(address.host, address.port))
        throw StartupError("cannot bind " + address.host + ":" + std::to_string(address.port));
      port_ = address.port;
    }
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
  }

  int port() const override { return port_; }
  bool tls() const override { return tls_; }
  engine::Provider& provider() override { return router_->provider(); }

  void stop() override {
    std::lock_guard lock(stop_mutex_);
    if (!thread_.joinable()) return;
    server_->stop();
    // listen_after_bind returns only after the worker pool has drained.
    thread_.join();
    logger_->info("stopped");
  }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::shared_ptr<Router> router_;
  bool tls_;
  std::shared_ptr<spdlog::logger> logger_;
  int port_ = -1;
  std::thread thread_;
  std::mutex stop_mutex_;
};

std::string envelope_body(ErrorCode code, const std::string& message) {
  return encode(ErrorEnvelope{code, message});
}

}  // namespace

std::unique_ptr<RunningService> serve(const ServiceConfig& config, ServeOptions options) {
  try {
    validate_config(config);
  } catch (const ConfigError& e) {
    throw StartupError(e.what());
  }
  ListenAddress address = parse_listen_address(config.listen_address);
  auto logger = options.logger ? options.logger : make_logger(config.log_level);

  engine::StoreState state;
  try {
    state = engine::load_fixture_state(engine::read_fixture_file(config.fixture_path));
  } catch (const engine::FixtureError& e) {
    throw StartupError(std::string("cannot load fixture: ") + e.what());
  }
  if (config.default_language_override) state.default_language = *config.default_language_override;

  std::unique_ptr<httplib::Server> server;
  bool tls = config.tls_certificate_path.has_value();
  if (tls) {
    for (const std::string* p : {&*config.tls_certificate_path, &*config.tls_key_path})
      if (!std::filesystem::is_regular_file(*p)) throw StartupError("TLS file not found: " + *p);
    auto ssl = std::make_unique<httplib::SSLServer>(config.tls_certificate_path->c_str(), config.tls_key_path->c_str());
    if (!ssl->is_valid()) throw StartupError("TLS certificate or key is invalid or they do not match");
    server = std::move(ssl);
  } else {
    server = std::make_unique<httplib::Server>();
  }

  auto router = std::make_shared<Router>(std::make_shared<engine::Provider>(std::move(state)), logger);

  // Plain SO_REUSEADDR: the library default SO_REUSEPORT would let a second
  // process share a busy port silently.
  server->set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  server->set_tcp_nodelay(true);
  server->set_keep_alive_timeout(2);
  server->set_payload_max_length(16 * 1024 * 1024);
  // Catch-all routes so the body has been read before dispatch; the router
  // owns path and method policy.
  httplib::Server::Handler handler = [router, hook = options.before_route](const httplib::Request& req,
                                                                          httplib::Response& res) {
    if (hook) hook(req.path);
    HttpResponse r = router->route(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, std::string(kContentType));
  };
  const std::string any = ".*";
  server->Get(any, handler);
  server->Post(any, handler);
  server->Put(any, handler);
  server->Patch(any, handler);
  server->Delete(any, handler);
  server->Options(any, handler);
  // Library-generated failures (unparsable request line, oversized payload)
  // still get an envelope.
  server->set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    res.set_content(envelope_body(ErrorCode::MalformedMessage, httplib::status_message(res.status)),
                    std::string(kContentType));
    return httplib::Server::HandlerResponse::Handled;
  });
  server->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
    res.status = 500;
    res.set_content(envelope_body(ErrorCode::MalformedMessage, "internal error"), std::string(kContentType));
  });

  auto service = std::make_unique<HttpService>(std::move(server), router, tls, logger);
  service->start(address);
  if (!tls)
    logger->warn(
        "TLS is not configured; serving plaintext HTTP. Requests carry passwords, so HTTPS is strongly recommended.");
  logger->info("listening on {}://{}:{}", tls ? "https" : "http", address.host, service->port());
  return service;
}

}  // namespace rsp::service
