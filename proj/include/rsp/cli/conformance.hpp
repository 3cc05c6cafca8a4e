#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rsp/client/client.hpp"

namespace rsp::cli {

enum class CompareMode { Exact, Fields };

/// Exact/Fields compare bodies against expected.json. Evolution replays the
/// requests against a server with a newer schema: the status must match and
/// the body must decode as the operation's response type (or an envelope)
/// with the same top-level members as recorded.
enum class RunMode { Strict, Evolution };

struct CaseMeta {
  std::string endpoint;  // ReadTableHeaders, ReadTable or Submit
  CompareMode compare = CompareMode::Exact;
  int expect_status = 200;
};

/// One corpus directory. `load_error` is set when the case files are
/// unusable; such a case fails without affecting the others.
struct CorpusCase {
  std::string name;
  std::filesystem::path directory;
  CaseMeta meta;
  std::string request;
  std::optional<std::string> expected;
  std::string load_error;
};

struct CaseResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::vector<CaseResult> cases;

  std::size_t passed() const;
  std::size_t failed() const { return cases.size() - passed(); }
};

using Poster = std::function<client::RawResponse(const std::string& path, const std::string& body)>;

/// Every subdirectory of `corpus` except `fixtures`, sorted by name.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& corpus);

/// Re-encodes a body through the wire model: the endpoint's response type for
/// status 200, ErrorEnvelope otherwise. Throws rsp::Error when it does not
/// decode.
std::string canonical_body(const std::string& endpoint, int status, const std::string& body);

/// True when every member of `expected` appears in `actual` with a matching
/// value; objects recurse, arrays must have equal length and match
/// element-wise. On mismatch `where` names the first differing path.
bool fields_match(const nlohmann::json& expected, const nlohmann::json& actual, std::string& where);

CaseResult run_case(const CorpusCase& c, const Poster& post, RunMode mode);

/// Runs the cases in name order against one server.
Report run_conformance(const std::filesystem::path& corpus, const Poster& post, RunMode mode);

/// Replays each case and rewrites expected.json and meta.json ExpectStatus
/// from the responses. Fields cases keep only the members already present in
/// their expected.json (all members when it is absent). Returns the number of
/// cases written.
std::size_t record_corpus(const std::filesystem::path& corpus, const Poster& post);

std::string format_report(const Report& report);

}  // namespace rsp::cli
