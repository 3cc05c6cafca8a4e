#include "rsp/service/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rsp::service {

std::optional<LogLevel> parse_log_level(std::string_view text) {
  if (text == "error") return LogLevel::Error;
  if (text == "info") return LogLevel::Info;
  if (text == "debug") return LogLevel::Debug;
  return std::nullopt;
}

std::string_view to_string(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Info: return "info";
    case LogLevel::Debug: return "debug";
  }
  return "info";
}

namespace {

LogLevel require_log_level(std::string_view text, const std::string& source) {
  auto level = parse_log_level(text);
  if (!level) throw ConfigError(source + ": log level must be one of error, info, debug");
  return *level;
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ConfigError(std::string("config member ") + name + " must be a string");
  return it->get<std::string>();
}

}  // namespace

ServiceConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("config file " + path.string() + " is not a JSON object");

  ServiceConfig config;
  if (auto v = optional_string(j, "Listen")) config.listen_address = *v;
  if (auto v = optional_string(j, "Fixture")) {
    // Relative fixture paths are resolved against the config file's directory.
    std::filesystem::path p(*v);
    config.fixture_path = p.is_relative() ? (path.parent_path() / p).string() : p.string();
  }
  config.tls_certificate_path = optional_string(j, "TlsCertificate");
  config.tls_key_path = optional_string(j, "TlsKey");
  config.default_language_override = optional_string(j, "DefaultLanguage");
  if (auto v = optional_string(j, "LogLevel")) config.log_level = require_log_level(*v, "LogLevel");
  return config;
}

void apply_environment(ServiceConfig& config, const EnvLookup& lookup) {
  if (const char* v = lookup("RSP_LISTEN"); v && *v) config.listen_address = v;
  if (const char* v = lookup("RSP_FIXTURE"); v && *v) config.fixture_path = v;
  if (const char* v = lookup("RSP_LOG_LEVEL"); v && *v) config.log_level = require_log_level(v, "RSP_LOG_LEVEL");
}

ListenAddress parse_listen_address(std::string_view text) {
  std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos) throw ConfigError("listen address must be host:port");
  std::string_view host = text.substr(0, colon);
  std::string_view port_text = text.substr(colon + 1);
  if (!host.empty() && host.front() == '[') {
    if (host.size() < 2 || host.back() != ']') throw ConfigError("listen address has an unterminated '['");
    host = host.substr(1, host.size() - 2);
  } else if (host.find(':') != std::string_view::npos) {
    throw ConfigError("IPv6 listen addresses must be bracketed");
  }
  if (host.empty()) throw ConfigError("listen address has an empty host");
  int port = -1;
  auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || end != port_text.data() + port_text.size() || port < 0 || port > 65535)
    throw ConfigError("listen address has an invalid port");
  return {std::string(host), port};
}

void validate_config(const ServiceConfig& config) {
  parse_listen_address(config.listen_address);
  if (config.fixture_path.empty()) throw ConfigError("no fixture path configured");
  if (config.tls_certificate_path.has_value() != config.tls_key_path.has_value())
    throw ConfigError("TLS certificate and key must be configured together");
  if (const auto& lang = config.default_language_override) {
    bool ok = lang->size() == 2 && std::islower(static_cast<unsigned char>((*lang)[0])) &&
              std::islower(static_cast<unsigned char>((*lang)[1]));
    if (!ok) throw ConfigError("default language must be a two-letter lowercase code");
  }
}

}  // namespace rsp::service
