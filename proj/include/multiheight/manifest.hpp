// JSON job manifests, reports and the golden fixture suite.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

// Malformed manifest; maps to exit status 2.
struct ManifestError : Error {
  using Error::Error;
};

struct RunOptions {
  std::optional<uint64_t> seed;  // overrides the manifest when set
  std::optional<std::string> mode;  // "random-u" or "symbolic-u"
  std::optional<double> tol;
  bool timing = false;
};

struct RunResult {
  int exit_code = 0;  // 0 success, 1 computation failure, 2 input error
  json report;
};

RunResult run_manifest(const json& manifest, const RunOptions& opts = {});
// Parses the text first; syntax errors give exit status 2.
RunResult run_manifest_text(const std::string& text, const RunOptions& opts = {});

std::string render_text(const json& report);

Spec spec_from_json(const json& vars);
json spec_to_json(const Spec& s);

struct Fixture {
  std::string name;
  std::string anchor;
  json manifest;
  // Each entry: {"path": json pointer into the report, and one of "equals",
  // "approx" (with "tol"), "at_least", "at_most", or "poly" (with
  // "variables" pointer) for equality up to sign}.
  json expect;
};

// Sorted by name.
std::vector<Fixture> fixtures();

// Returns the failed expectations (empty on success).
std::vector<std::string> check_fixture(const Fixture& f, const json& report);

}  // namespace mh
