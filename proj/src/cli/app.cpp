#include "rsp/cli/app.hpp"

#include <csignal>
#include <ostream>

#include <CLI11.hpp>

#include "rsp/cli/conformance.hpp"
#include "rsp/cli/pairs.hpp"
#include "rsp/cli/render.hpp"
#include "rsp/client/client.hpp"
#include "rsp/service/server.hpp"
#include "rsp/wire/codec.hpp"

namespace rsp::cli {

namespace {

struct Connection {
  std::string url = "http://127.0.0.1:8080";
  std::string user;
  std::optional<std::string> password;
  std::optional<std::string> language;
  double timeout_seconds = 10;
  std::optional<std::string> ca_cert;
  bool insecure = false;
};

void add_connection_options(CLI::App* cmd, Connection& c) {
  cmd->add_option("--url", c.url, "Base URL of the RSP service")->capture_default_str();
  cmd->add_option("--user", c.user, "User name")->required();
  cmd->add_option("--password", c.password, "Password (default: $RSP_PASSWORD)");
  cmd->add_option("--lang", c.language, "Two-letter language code for titles");
  cmd->add_option("--timeout", c.timeout_seconds, "Request timeout in seconds")->capture_default_str();
  cmd->add_option("--ca-cert", c.ca_cert, "PEM file of trusted certificate authorities");
  cmd->add_flag("--insecure", c.insecure, "Skip TLS certificate verification");
}

client::ClientConfig client_config(const Connection& c, const service::EnvLookup& env) {
  client::ClientConfig config;
  config.base_url = c.url;
  config.user_name = c.user;
  if (c.password) {
    config.password = *c.password;
  } else if (const char* p = env("RSP_PASSWORD")) {
    config.password = p;
  } else {
    throw UsageError("no password: pass --password or set RSP_PASSWORD");
  }
  config.language = c.language;
  config.timeout = std::chrono::milliseconds(static_cast<long>(c.timeout_seconds * 1000));
  config.ca_cert_path = c.ca_cert;
  config.verify_tls = !c.insecure;
  return config;
}

Format require_format(const std::string& text) {
  auto f = parse_format(text);
  if (!f) throw UsageError("unknown format '" + text + "' (expected table, csv or json)");
  return *f;
}

std::unique_ptr<client::Client> make_client(const Connection& c, const service::EnvLookup& env) {
  try {
    return std::make_unique<client::Client>(client_config(c, env));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

struct ServeArgs {
  std::optional<std::string> config;
  std::optional<std::string> fixture;
  std::optional<std::string> listen;
  std::optional<std::string> tls_cert;
  std::optional<std::string> tls_key;
  std::optional<std::string> language;
  std::optional<std::string> log_level;
};

service::ServiceConfig build_service_config(const ServeArgs& a, const service::EnvLookup& env) {
  service::ServiceConfig config;
  try {
    if (a.config) config = service::load_config_file(*a.config);
    service::apply_environment(config, env);
  } catch (const service::ConfigError& e) {
    throw UsageError(e.what());
  }
  if (a.fixture) config.fixture_path = *a.fixture;
  if (a.listen) config.listen_address = *a.listen;
  if (a.tls_cert) config.tls_certificate_path = *a.tls_cert;
  if (a.tls_key) config.tls_key_path = *a.tls_key;
  if (a.language) config.default_language_override = *a.language;
  if (a.log_level) {
    auto level = service::parse_log_level(*a.log_level);
    if (!level) throw UsageError("unknown log level '" + *a.log_level + "'");
    config.log_level = *level;
  }
  return config;
}

int run_serve(const ServeArgs& a, const service::EnvLookup& env) {
  service::ServiceConfig config = build_service_config(a, env);
  // Blocked before any thread starts so that only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  auto running = service::serve(config);
  int received = 0;
  sigwait(&signals, &received);
  running->stop();
  return kExitOk;
}

struct ReadArgs {
  Connection connection;
  std::string table;
  std::optional<std::string> filter;
  std::optional<std::string> order;
  std::int64_t skip = 0;
  std::int64_t take = 0;
  std::optional<std::int64_t> page_size;
  std::string format = "table";
};

int run_read(const ReadArgs& a, std::ostream& out, const service::EnvLookup& env) {
  Format format = require_format(a.format);
  if (a.skip < 0 || a.take < 0) throw UsageError("--skip and --take must be non-negative");
  auto client = make_client(a.connection, env);
  client::ReadOptions options{a.skip, a.take, a.filter, a.order};
  TableMessage table;
  if (a.page_size) {
    if (*a.page_size < 1) throw UsageError("--page-size must be positive");
    if (a.take != 0) throw UsageError("--page-size reads the whole table; it cannot be combined with --take");
    client::RowStream stream = client->fetch_all_rows(a.table, options, *a.page_size);
    std::vector<Row> rows;
    while (auto row = stream.next()) rows.push_back(std::move(*row));
    table.header = stream.header();
    table.fields = stream.fields();
    table.references = stream.references();
    table.actions = stream.actions();
    table.items = std::move(rows);
  } else {
    table = client->fetch_table(a.table, options);
  }
  out << render(table, format);
  return kExitOk;
}

struct SubmitArgs {
  Connection connection;
  std::string table;
  std::string op;
  std::vector<std::string> pairs;
  std::string format = "table";
};

int run_submit(const SubmitArgs& a, std::ostream& out, const service::EnvLookup& env) {
  auto operation = parse_operation(a.op);
  if (!operation) throw UsageError("unknown operation '" + a.op + "' (expected insert, update or delete)");
  Format format = require_format(a.format);
  SubmitPairs pairs = submit_from_pairs(a.pairs);
  if (pairs.names.empty()) throw UsageError("no column values given");
  std::vector<std::pair<std::string, Cell>> cells;
  for (std::size_t i = 0; i < pairs.names.size(); ++i) cells.emplace_back(pairs.names[i], pairs.data[i]);
  auto client = make_client(a.connection, env);
  std::optional<std::string> identity = client->submit(a.table, *operation, cells);
  if (format == Format::Json) {
    out << encode(SubmitResponse{identity}) << "\n";
  } else if (format == Format::Csv) {
    out << "Identity\r\n" << csv_escape(identity) << "\r\n";
  } else {
    out << "OK" << (identity ? " identity=" + *identity : std::string()) << "\n";
  }
  return kExitOk;
}

struct ConformanceArgs {
  std::optional<std::string> url;
  std::optional<std::string> fixture;
  std::string corpus = "corpus";
  bool evolution = false;
  bool record = false;
  std::optional<std::string> ca_cert;
};

int run_conformance_command(const ConformanceArgs& a, std::ostream& out) {
  if (a.url.has_value() == a.fixture.has_value()) throw UsageError("give exactly one of --url and --fixture");
  if (a.record && a.evolution) throw UsageError("--record and --evolution are exclusive");
  if (!std::filesystem::is_directory(a.corpus)) throw UsageError("corpus directory not found: " + a.corpus);

  std::unique_ptr<service::RunningService> local;
  client::ClientConfig config;
  if (a.fixture) {
    service::ServiceConfig sc;
    sc.listen_address = "127.0.0.1:0";
    sc.fixture_path = *a.fixture;
    sc.log_level = service::LogLevel::Error;
    local = service::serve(sc);
    config.base_url = "http://127.0.0.1:" + std::to_string(local->port());
  } else {
    config.base_url = *a.url;
    config.ca_cert_path = a.ca_cert;
  }
  std::unique_ptr<client::Client> transport;
  try {
    transport = std::make_unique<client::Client>(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Poster post = [&](const std::string& path, const std::string& body) { return transport->post(path, body); };

  if (a.record) {
    std::size_t n = record_corpus(a.corpus, post);
    out << "recorded " << n << " cases\n";
    return kExitOk;
  }
  Report report = run_conformance(a.corpus, post, a.evolution ? RunMode::Evolution : RunMode::Strict);
  out << format_report(report);
  return report.failed() == 0 && !report.cases.empty() ? kExitOk : kExitConformance;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const service::EnvLookup& env) {
  CLI::App app{"Client, server and conformance runner for the Relational Schema Protocol", "rsp"};
  app.require_subcommand(1);
  app.fallthrough(false);

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run a provider from a fixture file");
  serve->add_option("--config", serve_args.config, "JSON configuration file");
  serve->add_option("--fixture", serve_args.fixture, "Fixture file");
  serve->add_option("--listen", serve_args.listen, "host:port to listen on");
  serve->add_option("--tls-cert", serve_args.tls_cert, "PEM certificate");
  serve->add_option("--tls-key", serve_args.tls_key, "PEM private key");
  serve->add_option("--lang", serve_args.language, "Default language override");
  serve->add_option("--log-level", serve_args.log_level, "error, info or debug");

  Connection headers_connection;
  std::string headers_format = "table";
  auto* headers = app.add_subcommand("headers", "List the tables visible to a user");
  add_connection_options(headers, headers_connection);
  headers->add_option("--format", headers_format, "table, csv or json")->capture_default_str();

  ReadArgs read_args;
  auto* read = app.add_subcommand("read", "Read rows of a table");
  add_connection_options(read, read_args.connection);
  read->add_option("--table", read_args.table, "Table name")->required();
  read->add_option("--filter", read_args.filter, "Filter expression");
  read->add_option("--order", read_args.order, "Order expression");
  read->add_option("--skip", read_args.skip, "Rows to skip")->capture_default_str();
  read->add_option("--take", read_args.take, "Rows to return; 0 returns all")->capture_default_str();
  read->add_option("--page-size", read_args.page_size, "Fetch the whole table in pages of this size");
  read->add_option("--format", read_args.format, "table, csv or json")->capture_default_str();

  SubmitArgs submit_args;
  auto* submit = app.add_subcommand("submit", "Insert, update or delete one row");
  add_connection_options(submit, submit_args.connection);
  submit->add_option("--table", submit_args.table, "Table name")->required();
  submit->add_option("--op", submit_args.op, "insert, update or delete")->required();
  submit->add_option("--format", submit_args.format, "table, csv or json")->capture_default_str();
  submit->add_option("pairs", submit_args.pairs, "name=value or name:=null, in column order");

  ConformanceArgs conformance_args;
  auto* conformance = app.add_subcommand("conformance", "Replay the conformance corpus against a service");
  conformance->add_option("--url", conformance_args.url, "Base URL of the service under test");
  conformance->add_option("--fixture", conformance_args.fixture, "Start a local provider from this fixture");
  conformance->add_option("--corpus", conformance_args.corpus, "Corpus directory")->capture_default_str();
  conformance->add_option("--ca-cert", conformance_args.ca_cert, "PEM file of trusted certificate authorities");
  conformance->add_flag("--evolution", conformance_args.evolution,
                        "Only require matching status and decodable, same-shaped responses");
  conformance->add_flag("--record", conformance_args.record, "Rewrite expected.json files from the responses");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    auto parsed = app.get_subcommands();
    err << "\n" << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitUsage;
  }

  try {
    if (*serve) return run_serve(serve_args, env);
    if (*headers) {
      Format format = require_format(headers_format);
      auto client = make_client(headers_connection, env);
      out << render(client->fetch_headers(), format);
      return kExitOk;
    }
    if (*read) return run_read(read_args, out, env);
    if (*submit) return run_submit(submit_args, out, env);
    return run_conformance_command(conformance_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const client::RemoteError& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitRemote;
  } catch (const client::ProtocolError& e) {
    err << "protocol error: " << e.what() << "\n";
    return kExitRemote;
  } catch (const client::TransportError& e) {
    err << "transport error: " << e.what() << "\n";
    return kExitRemote;
  } catch (const service::StartupError& e) {
    err << "startup error: " << e.what() << "\n";
    return kExitRemote;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRemote;
  }
}

}  // namespace rsp::cli
