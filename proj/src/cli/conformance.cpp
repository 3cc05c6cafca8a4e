#include "rsp/cli/conformance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rsp/wire/codec.hpp"

namespace rsp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.passed; }));
}

namespace {

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

bool known_endpoint(const std::string& endpoint) {
  return endpoint == "ReadTableHeaders" || endpoint == "ReadTable" || endpoint == "Submit";
}

CaseMeta parse_meta(const std::string& text) {
  json j = json::parse(text);
  CaseMeta meta;
  meta.endpoint = j.at("Endpoint").get<std::string>();
  if (!known_endpoint(meta.endpoint)) throw std::runtime_error("unknown Endpoint '" + meta.endpoint + "'");
  std::string compare = j.value("Compare", "exact");
  if (compare == "exact") meta.compare = CompareMode::Exact;
  else if (compare == "fields") meta.compare = CompareMode::Fields;
  else throw std::runtime_error("unknown Compare mode '" + compare + "'");
  meta.expect_status = j.value("ExpectStatus", 200);
  return meta;
}

std::string path_of(const std::string& endpoint) { return "/rsp/" + endpoint; }

// Projects `actual` onto the members present in `shape`.
json project(const json& shape, const json& actual) {
  if (!shape.is_object() || !actual.is_object()) return actual;
  json out = json::object();
  for (auto it = shape.begin(); it != shape.end(); ++it)
    if (actual.contains(it.key())) out[it.key()] = project(it.value(), actual.at(it.key()));
  return out;
}

std::vector<std::string> member_names(const json& j) {
  std::vector<std::string> out;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<CorpusCase> load_corpus(const fs::path& corpus) {
  if (!fs::is_directory(corpus)) throw std::runtime_error("corpus directory not found: " + corpus.string());
  std::vector<CorpusCase> cases;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (!entry.is_directory()) continue;
    std::string name = entry.path().filename().string();
    if (name == "fixtures" || name.starts_with('.')) continue;
    CorpusCase c;
    c.name = name;
    c.directory = entry.path();
    try {
      auto meta = read_file(entry.path() / "meta.json");
      auto request = read_file(entry.path() / "request.json");
      if (!meta) throw std::runtime_error("missing meta.json");
      if (!request) throw std::runtime_error("missing request.json");
      c.meta = parse_meta(*meta);
      c.request = *request;
      c.expected = read_file(entry.path() / "expected.json");
    } catch (const std::exception& e) {
      c.load_error = e.what();
    }
    cases.push_back(std::move(c));
  }
  std::sort(cases.begin(), cases.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return cases;
}

std::string canonical_body(const std::string& endpoint, int status, const std::string& body) {
  if (status != 200) return encode(decode_as<ErrorEnvelope>(body));
  if (endpoint == "ReadTableHeaders") return encode(decode_as<ReadTableHeadersResponse>(body));
  if (endpoint == "ReadTable") return encode(decode_as<ReadTableResponse>(body));
  return encode(decode_as<SubmitResponse>(body));
}

bool fields_match(const json& expected, const json& actual, std::string& where) {
  if (expected.is_object()) {
    if (!actual.is_object()) return false;
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      if (!actual.contains(it.key())) {
        where = "/" + it.key() + " (missing)";
        return false;
      }
      std::string inner;
      if (!fields_match(it.value(), actual.at(it.key()), inner)) {
        where = "/" + it.key() + inner;
        return false;
      }
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) {
      where = " (array length)";
      return false;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      std::string inner;
      if (!fields_match(expected[i], actual[i], inner)) {
        where = "/" + std::to_string(i) + inner;
        return false;
      }
    }
    return true;
  }
  if (expected != actual) {
    where = " (expected " + expected.dump() + ", got " + actual.dump() + ")";
    return false;
  }
  return true;
}

CaseResult run_case(const CorpusCase& c, const Poster& post, RunMode mode) {
  CaseResult result{c.name, false, {}};
  if (!c.load_error.empty()) {
    result.detail = c.load_error;
    return result;
  }
  if (!c.expected) {
    result.detail = "missing expected.json";
    return result;
  }
  client::RawResponse response;
  try {
    response = post(path_of(c.meta.endpoint), c.request);
  } catch (const std::exception& e) {
    result.detail = e.what();
    return result;
  }
  if (response.status != c.meta.expect_status) {
    result.detail = "status " + std::to_string(response.status) + ", expected " + std::to_string(c.meta.expect_status);
    return result;
  }
  std::string actual;
  try {
    actual = canonical_body(c.meta.endpoint, response.status, response.body);
  } catch (const Error& e) {
    result.detail = std::string("response does not decode: ") + e.what();
    return result;
  }

  json expected_json;
  try {
    expected_json = json::parse(*c.expected);
  } catch (const json::exception&) {
    result.detail = "expected.json is not valid JSON";
    return result;
  }

  if (mode == RunMode::Evolution) {
    // Members are compared, values are not: the newer schema changes rows
    // and metadata but must not change message shapes. Fields cases record
    // only a subset of members, so only exact cases are checked.
    bool shape_recorded = c.meta.compare == CompareMode::Exact;
    if (shape_recorded && member_names(json::parse(actual)) != member_names(expected_json)) {
      result.detail = "top-level members differ from the recorded response";
      return result;
    }
    result.passed = true;
    return result;
  }

  if (c.meta.compare == CompareMode::Exact) {
    std::string expected_canonical;
    try {
      expected_canonical = canonical_body(c.meta.endpoint, c.meta.expect_status, *c.expected);
    } catch (const Error& e) {
      result.detail = std::string("expected.json does not decode: ") + e.what();
      return result;
    }
    if (actual != expected_canonical) {
      result.detail = "body differs from expected.json";
      return result;
    }
  } else {
    std::string where;
    if (!fields_match(expected_json, json::parse(actual), where)) {
      result.detail = "body differs at " + where;
      return result;
    }
  }
  result.passed = true;
  return result;
}

Report run_conformance(const fs::path& corpus, const Poster& post, RunMode mode) {
  Report report;
  for (const auto& c : load_corpus(corpus)) report.cases.push_back(run_case(c, post, mode));
  return report;
}

std::size_t record_corpus(const fs::path& corpus, const Poster& post) {
  std::size_t written = 0;
  for (const auto& c : load_corpus(corpus)) {
    if (!c.load_error.empty()) throw std::runtime_error(c.name + ": " + c.load_error);
    client::RawResponse response = post(path_of(c.meta.endpoint), c.request);
    json body = json::parse(canonical_body(c.meta.endpoint, response.status, response.body));
    if (c.meta.compare == CompareMode::Fields && c.expected) body = project(json::parse(*c.expected), body);
    write_file(c.directory / "expected.json", body.dump(2) + "\n");

    nlohmann::ordered_json meta = {{"Endpoint", c.meta.endpoint},
                                   {"Compare", c.meta.compare == CompareMode::Exact ? "exact" : "fields"},
                                   {"ExpectStatus", response.status}};
    write_file(c.directory / "meta.json", meta.dump(2) + "\n");
    ++written;
  }
  return written;
}

std::string format_report(const Report& report) {
  std::string out;
  for (const auto& c : report.cases) {
    out += c.passed ? "PASS  " : "FAIL  ";
    out += c.name;
    if (!c.passed) out += ": " + c.detail;
    out += '\n';
  }
  out += std::to_string(report.passed()) + "/" + std::to_string(report.cases.size()) + " cases passed\n";
  return out;
}

}  // namespace rsp::cli
