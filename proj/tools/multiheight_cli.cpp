// Command-line front end: runs a JSON manifest and writes the report.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "multiheight/manifest.hpp"

namespace {

bool parse_seed(const std::string& s, uint64_t& out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
  try {
    out = std::stoull(s);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int emit(const mh::json& report, const std::string& format, const std::string& out_path) {
  std::string text = format == "json" ? report.dump(2) + "\n" : mh::render_text(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree and height computations for multiprojective varieties"};
  std::string manifest_path, mode, out_path, format = "text", seed_text;
  double tol = 0;
  bool timing = false;
  app.add_option("--manifest", manifest_path, "Job manifest (JSON)")->required();
  app.add_option("--seed", seed_text, "Random seed (default 0)");
  app.add_option("--mode", mode, "random-u or symbolic-u")->check(CLI::IsMember({"random-u", "symbolic-u"}));
  app.add_option("--tol", tol, "Real tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", timing, "Include wall-clock timing in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  mh::RunOptions opts;
  opts.timing = timing;
  if (!mode.empty()) opts.mode = mode;
  if (tol > 0) opts.tol = tol;
  uint64_t seed = 0;
  if (const char* env = std::getenv("MULTIHEIGHT_SEED"); env && *env) {
    if (!parse_seed(env, seed)) {
      std::cerr << "MULTIHEIGHT_SEED: not an unsigned integer\n";
      return 2;
    }
    opts.seed = seed;
  } else if (!seed_text.empty()) {
    if (!parse_seed(seed_text, seed)) {
      std::cerr << "--seed: not an unsigned integer\n";
      return 2;
    }
    opts.seed = seed;
  }

  std::ifstream in(manifest_path, std::ios::binary);
  mh::RunResult res;
  if (!in) {
    res.exit_code = 2;
    res.report = {{"schema_version", mh::kSchemaVersion},
                  {"command", nullptr},
                  {"seed", std::to_string(opts.seed.value_or(0))},
                  {"mode", opts.mode.value_or("random-u")},
                  {"tolerance", opts.tol.value_or(1e-9)},
                  {"inputs", nullptr},
                  {"outputs", mh::json::object()},
                  {"status", "error"},
                  {"exit_code", 2},
                  {"error", {{"code", "unreadable_manifest"}, {"module", "cli"}, {"message", "cannot read " + manifest_path}}}};
  } else {
    std::stringstream ss;
    ss << in.rdbuf();
    res = mh::run_manifest_text(ss.str(), opts);
  }
  if (int rc = emit(res.report, format, out_path)) return rc;
  return res.exit_code;
}
