#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "multiheight/manifest.hpp"
#include "multiheight/parse.hpp"
#include "test_util.hpp"

using namespace mh;
using mhtest::P;

namespace {

struct Proc {
  int status = -1;
  std::string out;
};

Proc run_cli(const std::string& args, const std::string& env = "") {
  const char* cli = std::getenv("MULTIHEIGHT_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = env + " '" + std::string(cli) + "' " + args + " 2>/dev/null";
  Proc p;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, k);
  int st = pclose(f);
  p.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return p;
}

std::string manifest_path(const std::string& name) {
  const char* src = std::getenv("MULTIHEIGHT_SOURCE_DIR");
  REQUIRE(src != nullptr);
  return std::string(src) + "/manifests/" + name;
}

}  // namespace

TEST_CASE("parsing") {
  Spec s = mhtest::affine("x", 1);
  CHECK(parse_poly("x^2 - 5", s).to_string() == "x^2 - 5");
  CHECK(parse_poly("-(x - 1/2)*2", s) == P(s, "-2*x + 1"));

  Spec e = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 2, GroupKind::affine, {"x1", "x2"}}});
  MPoly c = parse_poly("(t+1)*x1^3 + x1^2 - x2^2", e);
  CHECK(c.to_string() == "t*x1^3 + x1^3 + x1^2 - x2^2");
  CHECK(*partial_degree(c, "t") == 1);
}

TEST_CASE("parse errors carry positions") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  try {
    parse_poly("x y", s);
    FAIL("implicit multiplication accepted");
  } catch (const ParseError& e) {
    CHECK(e.pos == 2);
  }
  try {
    parse_poly("x + z", s);
    FAIL("unknown variable accepted");
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
  CHECK_THROWS_AS(parse_poly("x^4294967296", s), ParseError);
  CHECK_THROWS_AS(parse_poly("x^2147483648", s), ParseError);
  CHECK_THROWS_AS(parse_poly("(x + 1", s), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0", s), ParseError);
  CHECK_THROWS_AS(parse_poly("", s), ParseError);
}

TEST_CASE("printing round-trips") {
  Spec s = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 3, GroupKind::projective, {}},
                           {"y", 2, GroupKind::auxiliary, {}}});
  std::mt19937_64 rng(83);
  for (int it = 0; it < 300; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 6, 4, 1000);
    if (it % 3 == 0) f = f * MPoly::constant(s, mpq_class(1, 1 + int(rng() % 7)));
    std::string text = print_poly(f);
    CHECK(parse_poly(text, s) == f);
    CHECK(print_poly(parse_poly(text, s)) == text);
  }
}

TEST_CASE("manifest errors") {
  RunResult bad = run_manifest_text("{ nope");
  CHECK(bad.exit_code == 2);
  CHECK(bad.report["error"]["code"] == "invalid_json");

  RunResult unknown = run_manifest(json{{"command", "frobnicate"}, {"variables", json::array()}});
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.report["status"] == "error");

  json m = {{"command", "certify"}, {"variables", {{{"name", "x"}}}}, {"polys", {"x", "x y"}}};
  RunResult parse = run_manifest(m);
  CHECK(parse.exit_code == 2);
  CHECK(parse.report["error"]["code"] == "parse_error");
  CHECK(parse.report["error"]["field"] == "polys[1]");
  CHECK(parse.report["error"]["position"] == 2);

  json extra = {{"command", "certify"}, {"variables", {{{"name", "x"}}}}, {"polys", {"x"}}, {"bogus", 1}};
  CHECK(run_manifest(extra).exit_code == 2);

  json common = {{"command", "certify"}, {"variables", {{{"name", "x"}}}}, {"polys", {"x", "x"}}};
  RunResult fail = run_manifest(common);
  CHECK(fail.exit_code == 1);
  CHECK(fail.report["status"] == "error");
  CHECK(fail.report["error"]["code"] == "certification_failed");
}

TEST_CASE("report fields") {
  json m = {{"schema_version", "1"},
            {"command", "certify"},
            {"variables", {{{"name", "x"}, {"size", 1}, {"kind", "affine"}}}},
            {"polys", {"x", "x - 1"}},
            {"options", {{"u", {{"1"}, {"2"}}}}}};
  RunOptions o;
  o.seed = 7;
  RunResult r = run_manifest(m, o);
  CHECK(r.exit_code == 0);
  CHECK(r.report["schema_version"] == kSchemaVersion);
  CHECK(r.report["seed"] == "7");
  CHECK(r.report["mode"] == "random-u");
  CHECK(r.report["inputs"] == m);
  CHECK(r.report["outputs"]["certificate"]["alpha"] == "1");
  CHECK(r.report["outputs"]["certificate"]["gs"] == json{"1", "-1"});
  CHECK_FALSE(r.report.contains("timing"));
  CHECK(render_text(r.report).find("status: ok") != std::string::npos);

  Spec s = spec_from_json(m["variables"]);
  CHECK(same_spec(spec_from_json(spec_to_json(s)), s));
}

TEST_CASE("golden fixtures") {
  auto fx = fixtures();
  CHECK(fx.size() >= 8);
  std::set<std::string> names;
  for (size_t i = 0; i < fx.size(); ++i) {
    CHECK_FALSE(fx[i].anchor.empty());
    names.insert(fx[i].name);
    if (i > 0) CHECK(fx[i - 1].name < fx[i].name);
  }
  CHECK(names.size() == fx.size());
  for (const auto& f : fx) {
    if (f.name != "a1-certificate" && f.name != "unit-resultant") continue;
    RunResult r = run_manifest(f.manifest);
    CHECK(check_fixture(f, r.report).empty());
    RunResult again = run_manifest(f.manifest);
    CHECK(again.report.dump() == r.report.dump());
  }
}

TEST_CASE("command line: exit codes, determinism and seeds") {
  std::string a1 = manifest_path("certify-a1.json");
  Proc p1 = run_cli("--manifest '" + a1 + "' --format json");
  Proc p2 = run_cli("--manifest '" + a1 + "' --format json");
  CHECK(p1.status == 0);
  CHECK(p1.out == p2.out);
  json rep = json::parse(p1.out);
  CHECK(rep["status"] == "ok");
  CHECK(rep["exit_code"] == 0);

  Proc seeded = run_cli("--manifest '" + a1 + "' --format json --seed 3", "MULTIHEIGHT_SEED=11");
  CHECK(json::parse(seeded.out)["seed"] == "11");
  Proc flag = run_cli("--manifest '" + a1 + "' --format json --seed 3");
  CHECK(json::parse(flag.out)["seed"] == "3");

  Proc text = run_cli("--manifest '" + a1 + "'");
  CHECK(text.status == 0);
  CHECK(text.out.find("command: certify") != std::string::npos);

  Proc missing = run_cli("--manifest /nonexistent/manifest.json --format json");
  CHECK(missing.status == 2);
  CHECK(json::parse(missing.out)["error"]["code"] == "unreadable_manifest");

  std::string tmp = std::string(std::getenv("MULTIHEIGHT_CLI")) + ".bad.json";
  {
    std::ofstream f(tmp);
    f << R"({"command": "certify", "variables": [{"name": "x"}], "polys": ["x y"]})";
  }
  Proc bad = run_cli("--manifest '" + tmp + "' --format json");
  CHECK(bad.status == 2);
  CHECK(json::parse(bad.out)["error"]["code"] == "parse_error");
  std::remove(tmp.c_str());

  Proc mode = run_cli("--manifest '" + a1 + "' --mode sideways");
  CHECK(mode.status != 0);

  std::string out = std::string(std::getenv("MULTIHEIGHT_CLI")) + ".out.json";
  Proc written = run_cli("--manifest '" + a1 + "' --format json --out '" + out + "'");
  CHECK(written.status == 0);
  std::ifstream in(out);
  CHECK(json::parse(in)["status"] == "ok");
  std::remove(out.c_str());
}
