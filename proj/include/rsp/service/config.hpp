#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsp::service {

enum class LogLevel { Error, Info, Debug };

std::optional<LogLevel> parse_log_level(std::string_view text);
std::string_view to_string(LogLevel level);

struct ServiceConfig {
  /// `host:port`; port 0 picks a free port.
  std::string listen_address = "127.0.0.1:8080";
  std::string fixture_path;
  std::optional<std::string> tls_certificate_path;
  std::optional<std::string> tls_key_path;
  std::optional<std::string> default_language_override;
  LogLevel log_level = LogLevel::Info;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a JSON object with optional members Listen, Fixture, TlsCertificate,
/// TlsKey, DefaultLanguage and LogLevel, layered over the defaults.
ServiceConfig load_config_file(const std::filesystem::path& path);

using EnvLookup = std::function<const char*(const char*)>;

/// Applies RSP_LISTEN, RSP_FIXTURE and RSP_LOG_LEVEL when set.
void apply_environment(ServiceConfig& config, const EnvLookup& lookup);

/// Throws ConfigError unless the listen address parses, a fixture path is
/// set, TLS paths come in pairs, and the language override is a two-letter
/// code.
void validate_config(const ServiceConfig& config);

struct ListenAddress {
  std::string host;
  int port = 0;
};

/// `host:port` or `[v6]:port`.
ListenAddress parse_listen_address(std::string_view text);

}  // namespace rsp::service
