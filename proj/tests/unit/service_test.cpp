#include <gtest/gtest.h>

#include <httplib.h>
#include <spdlog/sinks/null_sink.h>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "rsp/engine/fixture.hpp"
#include "rsp/engine/operations.hpp"
#include "rsp/service/server.hpp"
#include "rsp/wire/codec.hpp"
#include "tls.hpp"

namespace rsp::service {
namespace {

using nlohmann::json;

std::string v1_path() { return testing::source_dir() + "/corpus/fixtures/v1.json"; }

std::shared_ptr<engine::Provider> v1_provider() {
  return std::make_shared<engine::Provider>(engine::load_fixture_state(engine::read_fixture_file(v1_path())));
}

struct CapturedLog {
  std::ostringstream stream;
  std::shared_ptr<spdlog::logger> logger;

  explicit CapturedLog(spdlog::level::level_enum level = spdlog::level::debug) {
    logger = std::make_shared<spdlog::logger>("test", std::make_shared<spdlog::sinks::ostream_sink_mt>(stream));
    logger->set_pattern("%Y-%m-%dT%H:%M:%S.%eZ %l %v", spdlog::pattern_time_type::utc);
    logger->set_level(level);
  }

  std::vector<std::string> lines() {
    logger->flush();
    std::vector<std::string> out;
    std::istringstream in(stream.str());
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
  }
};

std::shared_ptr<spdlog::logger> quiet_logger() {
  return std::make_shared<spdlog::logger>("quiet", std::make_shared<spdlog::sinks::null_sink_mt>());
}

std::string admin_headers() { return encode(ReadTableHeadersRequest{"admin", "admin-secret", std::nullopt}); }

ErrorEnvelope envelope_of(const HttpResponse& r) { return decode_as<ErrorEnvelope>(r.body); }

ServiceConfig local_config() {
  ServiceConfig c;
  c.listen_address = "127.0.0.1:0";
  c.fixture_path = v1_path();
  return c;
}

TEST(Router, ReadTableHeadersWithValidCredentials) {
  Router router(v1_provider());
  HttpResponse r = router.route("POST", "/rsp/ReadTableHeaders", admin_headers());
  ASSERT_EQ(r.status, 200);
  auto response = decode_as<ReadTableHeadersResponse>(r.body);
  EXPECT_EQ(response.table_headers.size(), 3u);
}

TEST(Router, GetOnKnownPathIs405) {
  Router router(v1_provider());
  HttpResponse r = router.route("GET", "/rsp/ReadTable", "");
  EXPECT_EQ(r.status, 405);
  EXPECT_EQ(envelope_of(r).code, ErrorCode::MalformedMessage);
}

TEST(Router, UnknownPathIs404) {
  Router router(v1_provider());
  for (const char* method : {"POST", "GET", "DELETE"}) {
    HttpResponse r = router.route(method, "/rsp/DropTable", admin_headers());
    EXPECT_EQ(r.status, 404) << method;
    EXPECT_EQ(envelope_of(r).code, ErrorCode::MalformedMessage);
  }
}

TEST(Router, SubmitWithOperationNineIsBadOperation) {
  Router router(v1_provider());
  json body = {{"UserName", "admin"},
               {"Password", "admin-secret"},
               {"TableName", "Department"},
               {"Operation", 9},
               {"Fields", json::array()},
               {"Data", json::array()}};
  HttpResponse r = router.route("POST", "/rsp/Submit", body.dump());
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(envelope_of(r).code, ErrorCode::BadOperation);
}

TEST(Router, ErrorsAreMappedThroughTheFixedTable) {
  Router router(v1_provider());
  auto read = [&](const std::string& user, const std::string& password, const std::string& table,
                  std::optional<std::string> filter = std::nullopt) {
    ReadTableRequest q;
    q.user_name = user;
    q.password = password;
    q.table_name = table;
    q.filter_expression = std::move(filter);
    return router.route("POST", "/rsp/ReadTable", encode(q));
  };
  struct Case {
    HttpResponse response;
    int status;
    ErrorCode code;
  };
  std::vector<Case> cases = {
      {read("admin", "wrong", "Employee"), 401, ErrorCode::AuthFailed},
      {read("reader", "reader-pass", "Project"), 403, ErrorCode::Forbidden},
      {read("admin", "admin-secret", "Nope"), 404, ErrorCode::UnknownTable},
      {read("admin", "admin-secret", "Employee", "Name = "), 400, ErrorCode::BadExpression},
      {read("admin", "admin-secret", "Employee", "Ghost = 1"), 400, ErrorCode::UnknownField},
      {router.route("POST", "/rsp/ReadTable", "{"), 400, ErrorCode::MalformedMessage},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(c.response.status, c.status) << c.response.body;
    EXPECT_EQ(envelope_of(c.response).code, c.code) << c.response.body;
  }
}

TEST(MapError, StatusTable) {
  const std::pair<ErrorCode, int> table[] = {
      {ErrorCode::MalformedMessage, 400}, {ErrorCode::BadExpression, 400}, {ErrorCode::UnknownField, 400},
      {ErrorCode::BadOperation, 400},     {ErrorCode::AuthFailed, 401},    {ErrorCode::Forbidden, 403},
      {ErrorCode::UnknownTable, 404},     {ErrorCode::NotFound, 404},      {ErrorCode::ConstraintViolation, 409},
  };
  for (auto [code, status] : table) {
    auto [s, env] = map_error(Error(code, "detail"));
    EXPECT_EQ(s, status) << to_string(code);
    EXPECT_EQ(env.code, code);
    EXPECT_EQ(env.message, "detail");
  }
}

TEST(Router, LogsOneLinePerExchange) {
  CapturedLog log;
  Router router(v1_provider(), log.logger);
  router.route("POST", "/rsp/ReadTableHeaders", admin_headers());
  router.route("GET", "/rsp/Submit", "");
  router.route("POST", "/nowhere", "");
  EXPECT_EQ(log.lines().size(), 3u);
}

// Corrupts a valid body in one of several ways.
std::string mutate(testing::Rng& rng, std::string body) {
  switch (testing::uniform(rng, 0, 7)) {
    case 0:
      return body.substr(0, testing::uniform(rng, 0, static_cast<int>(body.size())));
    case 1: {
      std::size_t at = testing::uniform(rng, 0, static_cast<int>(body.size()) - 1);
      body[at] = static_cast<char>(testing::uniform(rng, 0, 255));
      return body;
    }
    case 2: {
      std::size_t at = testing::uniform(rng, 0, static_cast<int>(body.size()));
      static const char* junk[] = {"\"", "{", "]", ",", "null", "\xff", "\\u0000", "1e999"};
      return body.insert(at, junk[testing::uniform(rng, 0, 7)]);
    }
    case 3: {
      json j = json::parse(body);
      auto it = j.begin();
      std::advance(it, testing::uniform(rng, 0, static_cast<int>(j.size()) - 1));
      static const json replacements[] = {nullptr, 1, -1, "x", true, json::array(), json::object(), 1.5};
      *it = replacements[testing::uniform(rng, 0, 7)];
      return j.dump();
    }
    case 4: {
      json j = json::parse(body);
      auto it = j.begin();
      std::advance(it, testing::uniform(rng, 0, static_cast<int>(j.size()) - 1));
      j.erase(it.key());
      return j.dump();
    }
    case 5:
      return "[" + body + "]";
    case 6:
      return std::string();
    default: {
      std::string noise;
      int n = testing::uniform(rng, 1, 40);
      for (int i = 0; i < n; ++i) noise.push_back(static_cast<char>(testing::uniform(rng, 1, 255)));
      return noise;
    }
  }
}

std::string valid_body(testing::Rng& rng, std::string_view path) {
  static const char* tables[] = {"Department", "Employee", "Project", "Nope"};
  static const char* filters[] = {"Id > 2", "Name LIKE 'A%'", "Department.Name = 'Sales'", "Id = ", "Ghost = 1"};
  std::string user = testing::chance(rng, 0.8) ? "admin" : "reader";
  std::string password = user == "admin" ? "admin-secret" : "reader-pass";
  if (testing::chance(rng, 0.1)) password = "wrong";
  if (path == kReadTableHeadersPath) return encode(ReadTableHeadersRequest{user, password, std::nullopt});
  if (path == kReadTablePath) {
    ReadTableRequest q;
    q.user_name = user;
    q.password = password;
    q.table_name = tables[testing::uniform(rng, 0, 3)];
    q.take = testing::uniform(rng, 0, 3);
    if (testing::chance(rng, 0.5)) q.filter_expression = filters[testing::uniform(rng, 0, 4)];
    return encode(q);
  }
  SubmitRequest s;
  s.user_name = user;
  s.password = password;
  s.table_name = "Department";
  s.operation = testing::uniform(rng, 1, 3);
  Field f;
  f.data_type = "text";
  f.id = "Department.Name";
  f.name = "Name";
  f.table = "Department";
  f.title = "Name";
  s.fields.push_back(f);
  s.data.push_back("Fuzz");
  return encode(s);
}

bool decodes_as_response(std::string_view path, const std::string& body) {
  try {
    if (path == kReadTableHeadersPath) decode_as<ReadTableHeadersResponse>(body);
    else if (path == kReadTablePath) decode_as<ReadTableResponse>(body);
    else decode_as<SubmitResponse>(body);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool decodes_as_envelope(const std::string& body) {
  try {
    decode_as<ErrorEnvelope>(body);
    return true;
  } catch (const Error&) {
    return false;
  }
}

TEST(RouterProperty, EveryResponseIsResponseTypeOrEnvelope) {
  Router router(v1_provider());
  testing::Rng rng(101);
  const std::string_view paths[] = {kReadTableHeadersPath, kReadTablePath, kSubmitPath};
  int ok = 0;
  int errors = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string_view path = paths[testing::uniform(rng, 0, 2)];
    std::string body = valid_body(rng, path);
    if (testing::chance(rng, 0.85)) body = mutate(rng, body);
    HttpResponse r = router.route("POST", path, body);
    bool response = decodes_as_response(path, r.body);
    bool envelope = decodes_as_envelope(r.body);
    // An envelope also satisfies the all-optional SubmitResponse, so the
    // status decides which shape is required.
    ASSERT_TRUE(r.status == 200 || r.status >= 400) << r.status;
    if (r.status == 200) {
      ASSERT_TRUE(response) << r.body;
      ASSERT_FALSE(envelope) << r.body;
    } else {
      ASSERT_TRUE(envelope) << r.status << " " << r.body;
    }
    ASSERT_EQ(r.body.find(" WHERE "), std::string::npos) << r.body;
    ASSERT_EQ(r.body.find(" FROM "), std::string::npos) << r.body;
    (r.status == 200 ? ok : errors)++;
  }
  EXPECT_GT(ok, 100);
  EXPECT_GT(errors, 1000);
}

std::string random_password(testing::Rng& rng) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789!#$%&()*+-./:<=>?@[]^_{|}~ ";
  std::string out;
  int n = testing::uniform(rng, 10, 24);
  for (int i = 0; i < n; ++i) out.push_back(alphabet[testing::uniform(rng, 0, static_cast<int>(alphabet.size()) - 1)]);
  return out;
}

TEST(RouterProperty, PasswordsNeverReachTheLog) {
  CapturedLog log(spdlog::level::debug);
  auto state = engine::load_fixture_state(engine::read_fixture_file(v1_path()));
  Router router(std::make_shared<engine::Provider>(state), log.logger);
  testing::Rng rng(202);
  std::vector<std::string> passwords = {"admin-secret", "reader-pass"};
  const std::string_view paths[] = {kReadTableHeadersPath, kReadTablePath, kSubmitPath};
  for (int i = 0; i < 600; ++i) {
    std::string password = i % 5 == 0 ? passwords[i % 2] : random_password(rng);
    if (i % 5 != 0) passwords.push_back(password);
    std::string user = i % 5 == 0 ? (i % 2 == 0 ? "admin" : "reader") : (testing::chance(rng, 0.5) ? "admin" : "ghost");
    std::string_view path = paths[i % 3];
    json body = json::parse(valid_body(rng, path));
    body["UserName"] = user;
    body["Password"] = password;
    std::string text = body.dump();
    // Some bodies are damaged after the password so decoding fails late.
    if (i % 4 == 1) text = text.substr(0, text.size() - 1);
    if (i % 4 == 2) text.insert(text.find("\"Password\""), "\"Junk\":[},");
    router.route("POST", path, text);
  }
  auto lines = log.lines();
  ASSERT_EQ(lines.size(), 600u);
  for (const auto& line : lines) {
    for (const auto& p : passwords) ASSERT_EQ(line.find(p), std::string::npos) << line;
    ASSERT_EQ(line.find("Password"), std::string::npos) << line;
  }
}

TEST(Router, LogLineCarriesExchangeSummary) {
  CapturedLog log(spdlog::level::info);
  Router router(v1_provider(), log.logger);
  router.route("POST", "/rsp/ReadTableHeaders", admin_headers());
  router.route("POST", "/rsp/ReadTableHeaders", encode(ReadTableHeadersRequest{"admin", "bad", std::nullopt}));
  auto lines = log.lines();
  ASSERT_EQ(lines.size(), 2u);
  for (const auto& line : lines) {
    // "<timestamp> <level> <json>"
    ASSERT_EQ(line.substr(23, 2), "Z ") << line;
    json j = json::parse(line.substr(line.find('{')));
    EXPECT_EQ(j["user"], "admin");
    EXPECT_EQ(j["path"], "/rsp/ReadTableHeaders");
    EXPECT_EQ(j["method"], "POST");
    EXPECT_TRUE(j["duration_ms"].is_number());
    EXPECT_FALSE(j.contains("error")) << "error detail only at debug level";
  }
  EXPECT_EQ(json::parse(lines[0].substr(lines[0].find('{')))["status"], 200);
  EXPECT_EQ(json::parse(lines[1].substr(lines[1].find('{')))["status"], 401);
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = testing::make_temp_dir("rsp-service"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& name, const std::string& content) {
    auto p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  std::filesystem::path dir_;
};

using Config = TempDir;

TEST_F(Config, FileResolvesRelativeFixtureAndReadsAllKeys) {
  auto path = write("rsp.json", R"({"Listen": "0.0.0.0:9000", "Fixture": "data/v1.json", "TlsCertificate": "/c.pem",
                                   "TlsKey": "/k.pem", "DefaultLanguage": "de", "LogLevel": "debug"})");
  ServiceConfig c = load_config_file(path);
  EXPECT_EQ(c.listen_address, "0.0.0.0:9000");
  EXPECT_EQ(std::filesystem::path(c.fixture_path), dir_ / "data/v1.json");
  EXPECT_EQ(c.tls_certificate_path, "/c.pem");
  EXPECT_EQ(c.tls_key_path, "/k.pem");
  EXPECT_EQ(c.default_language_override, "de");
  EXPECT_EQ(c.log_level, LogLevel::Debug);
}

TEST_F(Config, DefaultsAndErrors) {
  ServiceConfig c = load_config_file(write("min.json", R"({"Fixture": "/abs/v1.json"})"));
  EXPECT_EQ(c.listen_address, "127.0.0.1:8080");
  EXPECT_EQ(c.fixture_path, "/abs/v1.json");
  EXPECT_EQ(c.log_level, LogLevel::Info);
  EXPECT_THROW(load_config_file(dir_ / "missing.json"), ConfigError);
  EXPECT_THROW(load_config_file(write("bad.json", "{")), ConfigError);
  EXPECT_THROW(load_config_file(write("type.json", R"({"Listen": 80})")), ConfigError);
  EXPECT_THROW(load_config_file(write("level.json", R"({"LogLevel": "loud"})")), ConfigError);
}

TEST(ConfigEnv, OverridesApplyOnlyWhenSet) {
  ServiceConfig c;
  c.fixture_path = "file.json";
  std::map<std::string, std::string> env = {{"RSP_LISTEN", "127.0.0.1:1234"}, {"RSP_LOG_LEVEL", "error"}};
  apply_environment(c, [&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(c.listen_address, "127.0.0.1:1234");
  EXPECT_EQ(c.fixture_path, "file.json");
  EXPECT_EQ(c.log_level, LogLevel::Error);

  env = {{"RSP_FIXTURE", "other.json"}, {"RSP_LOG_LEVEL", "verbose"}};
  EXPECT_THROW(apply_environment(c, [&](const char* name) -> const char* {
                 auto it = env.find(name);
                 return it == env.end() ? nullptr : it->second.c_str();
               }),
               ConfigError);
}

TEST(ConfigValidate, Rules) {
  ServiceConfig c;
  c.fixture_path = "f.json";
  EXPECT_NO_THROW(validate_config(c));
  ServiceConfig half = c;
  half.tls_certificate_path = "c.pem";
  EXPECT_THROW(validate_config(half), ConfigError);
  ServiceConfig no_fixture;
  EXPECT_THROW(validate_config(no_fixture), ConfigError);
  ServiceConfig lang = c;
  lang.default_language_override = "EN";
  EXPECT_THROW(validate_config(lang), ConfigError);
  for (const char* bad : {"localhost", "host:", ":80", "host:99999", "host:x", "[::1:80"}) {
    ServiceConfig a = c;
    a.listen_address = bad;
    EXPECT_THROW(validate_config(a), ConfigError) << bad;
  }
  auto v6 = parse_listen_address("[::1]:8443");
  EXPECT_EQ(v6.host, "::1");
  EXPECT_EQ(v6.port, 8443);
  EXPECT_EQ(parse_listen_address("0.0.0.0:0").port, 0);
}

using Startup = TempDir;

TEST_F(Startup, BadFixtureFailsBeforeListening) {
  ServiceConfig c = local_config();
  c.fixture_path = (dir_ / "absent.json").string();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError);
  c.fixture_path = write("broken.json", R"({"DefaultLanguage": "en", "Tables": [], "Users": 3})").string();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError);
}

TEST_F(Startup, BadTlsMaterialFails) {
  ServiceConfig c = local_config();
  c.tls_certificate_path = write("garbage.crt", "not a certificate").string();
  c.tls_key_path = write("garbage.key", "not a key").string();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError);

  auto a = testing::make_self_signed(dir_, "a");
  auto b = testing::make_self_signed(dir_, "b");
  c.tls_certificate_path = a.certificate.string();
  c.tls_key_path = b.key.string();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError) << "mismatched key";

  c.tls_key_path = (dir_ / "missing.key").string();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError);

  c.tls_key_path.reset();
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError) << "certificate without key";
}

TEST(StartupPort, BusyPortFails) {
  auto first = serve(local_config(), {quiet_logger(), {}});
  ServiceConfig c = local_config();
  c.listen_address = "127.0.0.1:" + std::to_string(first->port());
  EXPECT_THROW(serve(c, {quiet_logger(), {}}), StartupError);
}

TEST(Serve, PlaintextWarnsAndServesJson) {
  CapturedLog log(spdlog::level::info);
  auto service = serve(local_config(), {log.logger, {}});
  EXPECT_FALSE(service->tls());
  auto lines = log.lines();
  ASSERT_GE(lines.size(), 2u);
  EXPECT_NE(lines[0].find("warn"), std::string::npos);
  EXPECT_NE(lines[0].find("HTTPS is strongly recommended"), std::string::npos);

  httplib::Client http("127.0.0.1", service->port());
  auto ok = http.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json");
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  EXPECT_EQ(ok->get_header_value("Content-Type"), kContentType);
  EXPECT_EQ(decode_as<ReadTableHeadersResponse>(ok->body).table_headers.size(), 3u);

  auto get = http.Get("/rsp/ReadTable");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->status, 405);
  EXPECT_EQ(get->get_header_value("Content-Type"), kContentType);
  EXPECT_EQ(decode_as<ErrorEnvelope>(get->body).code, ErrorCode::MalformedMessage);

  auto missing = http.Put("/elsewhere", "x", "text/plain");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(decode_as<ErrorEnvelope>(missing->body).code, ErrorCode::MalformedMessage);
}

TEST(Serve, LanguageOverrideChangesDefaultTitles) {
  ServiceConfig c = local_config();
  auto en = serve(c, {quiet_logger(), {}});
  c.default_language_override = "de";
  auto de = serve(c, {quiet_logger(), {}});
  auto titles = [](int port) {
    httplib::Client http("127.0.0.1", port);
    auto r = http.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json");
    std::vector<std::string> out;
    for (const auto& h : decode_as<ReadTableHeadersResponse>(r->body).table_headers) out.push_back(h.plural_title);
    return out;
  };
  EXPECT_NE(titles(en->port()), titles(de->port()));
}

TEST(Serve, LibraryRejectionsGetEnvelope) {
  auto service = serve(local_config(), {quiet_logger(), {}});
  httplib::Client http("127.0.0.1", service->port());
  httplib::Request req;
  req.method = "BREW";
  req.path = "/rsp/ReadTable";
  auto r = http.send(req);
  ASSERT_TRUE(r) << httplib::to_string(r.error());
  EXPECT_EQ(r->status, 400);
  EXPECT_EQ(r->get_header_value("Content-Type"), kContentType);
  EXPECT_EQ(decode_as<ErrorEnvelope>(r->body).code, ErrorCode::MalformedMessage);
}

using Tls = TempDir;

TEST_F(Tls, RoundTripWithVerification) {
  auto material = testing::make_self_signed(dir_);
  ServiceConfig c = local_config();
  c.tls_certificate_path = material.certificate.string();
  c.tls_key_path = material.key.string();
  CapturedLog log(spdlog::level::info);
  auto service = serve(c, {log.logger, {}});
  EXPECT_TRUE(service->tls());
  for (const auto& line : log.lines()) EXPECT_EQ(line.find("warn"), std::string::npos) << line;

  httplib::Client https("https://127.0.0.1:" + std::to_string(service->port()));
  https.set_ca_cert_path(material.certificate.c_str());
  https.enable_server_certificate_verification(true);
  auto r = https.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json");
  ASSERT_TRUE(r) << httplib::to_string(r.error());
  EXPECT_EQ(r->status, 200);

  httplib::Client untrusted("https://127.0.0.1:" + std::to_string(service->port()));
  untrusted.set_ca_cert_path(testing::make_self_signed(dir_, "other").certificate.c_str());
  untrusted.enable_server_certificate_verification(true);
  EXPECT_FALSE(untrusted.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json"));

  httplib::Client plain("127.0.0.1", service->port());
  plain.set_read_timeout(2, 0);
  auto p = plain.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json");
  EXPECT_TRUE(!p || p->status != 200);
}

TEST(Shutdown, InFlightRequestCompletes) {
  std::mutex m;
  std::condition_variable cv;
  bool entered = false;
  bool release = false;
  ServeOptions options{quiet_logger(), [&](std::string_view path) {
                         if (path != kReadTablePath) return;
                         std::unique_lock lock(m);
                         entered = true;
                         cv.notify_all();
                         cv.wait(lock, [&] { return release; });
                       }};
  auto service = serve(local_config(), options);
  int port = service->port();

  ReadTableRequest q;
  q.user_name = "admin";
  q.password = "admin-secret";
  q.table_name = "Employee";
  auto pending = std::async(std::launch::async, [&] {
    httplib::Client http("127.0.0.1", port);
    return http.Post("/rsp/ReadTable", encode(q), "application/json");
  });
  {
    std::unique_lock lock(m);
    ASSERT_TRUE(cv.wait_for(lock, std::chrono::seconds(10), [&] { return entered; }));
  }
  std::atomic<bool> stopped = false;
  auto stopping = std::async(std::launch::async, [&] {
    service->stop();
    stopped = true;
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  EXPECT_FALSE(stopped) << "stop() must wait for the in-flight request";
  {
    std::lock_guard lock(m);
    release = true;
  }
  cv.notify_all();
  auto result = pending.get();
  ASSERT_TRUE(result) << httplib::to_string(result.error());
  EXPECT_EQ(result->status, 200);
  EXPECT_EQ(decode_as<ReadTableResponse>(result->body).table.items.size(), 6u);
  stopping.get();
  EXPECT_TRUE(stopped);

  httplib::Client late("127.0.0.1", port);
  late.set_connection_timeout(1, 0);
  EXPECT_FALSE(late.Post("/rsp/ReadTableHeaders", admin_headers(), "application/json")) << "listener closed";
  service->stop();
}

TEST(Serve, ConcurrentReadersAndWritersKeepStateConsistent) {
  auto service = serve(local_config(), {quiet_logger(), {}});
  int port = service->port();
  std::vector<std::thread> threads;
  std::atomic<int> failures = 0;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      httplib::Client http("127.0.0.1", port);
      for (int i = 0; i < 25; ++i) {
        if (t % 2 == 0) {
          SubmitRequest s;
          s.user_name = "admin";
          s.password = "admin-secret";
          s.table_name = "Department";
          s.operation = 1;
          Field f;
          f.data_type = "text";
          f.id = "Department.Name";
          f.name = "Name";
          f.table = "Department";
          f.title = "Name";
          s.fields.push_back(f);
          s.data.push_back("D" + std::to_string(t) + "-" + std::to_string(i));
          auto r = http.Post("/rsp/Submit", encode(s), "application/json");
          if (!r || r->status != 200) ++failures;
        } else {
          ReadTableRequest q;
          q.user_name = "reader";
          q.password = "reader-pass";
          q.table_name = "Employee";
          auto r = http.Post("/rsp/ReadTable", encode(q), "application/json");
          if (!r || r->status != 200) ++failures;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(failures, 0);
  auto snapshot = service->provider().snapshot();
  EXPECT_TRUE(engine::audit_state(snapshot).empty());
  ReadTableRequest q;
  q.user_name = "admin";
  q.password = "admin-secret";
  q.table_name = "Department";
  EXPECT_EQ(service->provider().read_table(q).table.items.size(), 4u + 4 * 25);
}

}  // namespace
}  // namespace rsp::service
