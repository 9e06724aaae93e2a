#include <algorithm>

#include "multiheight/manifest.hpp"

namespace mh {

namespace {

Fixture make(const char* name, const char* anchor, const char* manifest, const char* expect) {
  return {name, anchor, json::parse(manifest), json::parse(expect)};
}

}  // namespace

std::vector<Fixture> fixtures() {
  std::vector<Fixture> fx;

  fx.push_back(make("a1-certificate", "nullcert-a1-worked", R"J({
    "schema_version": "1", "command": "certify",
    "variables": [{"name": "x", "size": 1, "kind": "affine"}],
    "polys": ["x", "x - 1"],
    "options": {"seed": "0", "u": [["1"], ["2"]]}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/certificate/alpha", "equals": "1"},
    {"path": "/outputs/certificate/gs", "equals": ["1", "-1"]},
    {"path": "/outputs/certificate/verified", "equals": true},
    {"path": "/outputs/bounds/all_pass", "equals": true}
  ])J"));

  fx.push_back(make("arith-implicit", "arith-perron-h1h2", R"J({
    "schema_version": "1", "command": "implicitize",
    "variables": [{"name": "x", "size": 1, "kind": "affine"}],
    "map": ["5*x^2", "7*x^3"],
    "options": {"variant": "Z"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/E", "variables": "/outputs/E_variables", "poly": "7^2*y_1^3 - 5^3*y_2^2"},
    {"path": "/outputs/newton/contained", "equals": true},
    {"path": "/outputs/max_height_weight", "approx": 8.720134035412928, "tol": 1e-9}
  ])J"));

  fx.push_back(make("coprime-param", "coprime-param-implicit", R"J({
    "schema_version": "1", "command": "implicitize",
    "variables": [{"name": "t", "size": 1, "kind": "parameter"}, {"name": "x", "size": 1, "kind": "affine"}],
    "map": ["(2*t^2 + 1)*x^2 - 1", "(t^2 + 3*t - 1)*x^3 - 1"],
    "options": {"variant": "param"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/E", "variables": "/outputs/E_variables",
     "poly": "(t^2 + 3*t - 1)^2*(y_1 + 1)^3 - (2*t^2 + 1)^3*(y_2 + 1)^2"},
    {"path": "/outputs/newton/contained", "equals": true}
  ])J"));

  fx.push_back(make("eigenpair-count", "eigenpair-count", R"J({
    "schema_version": "1", "command": "chow",
    "variables": [{"name": "x", "size": 2, "kind": "projective"}, {"name": "v", "size": 3, "kind": "projective"}],
    "polys": ["x_0*v_0 - x_1*(2*v_0 + v_1)", "x_0*v_1 - x_1*(v_1 - v_2)", "x_0*v_2 - x_1*(3*v_0 + v_2)"],
    "options": {"divisor_mode": "ff_t"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/intersection_count", "equals": "3"}
  ])J"));

  fx.push_back(make("eliminant-curve", "eliminant-multiplicity", R"J({
    "schema_version": "1", "command": "resultant",
    "variables": [{"name": "x1", "size": 2, "kind": "projective"}, {"name": "x2", "size": 2, "kind": "projective"}],
    "ideal": ["x1_0^2*x2_1 - x1_1^2*x2_0"],
    "options": {"index": [0, 2]}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/elim", "variables": "/outputs/elim_variables", "poly": "u0_0*u1_1 - u0_1*u1_0"},
    {"path": "/outputs/nu", "equals": 2}
  ])J"));

  fx.push_back(make("elliptic-perron", "elliptic-perron", R"J({
    "schema_version": "1", "command": "implicitize",
    "variables": [{"name": "t", "size": 1, "kind": "parameter"}, {"name": "x", "size": 2, "kind": "affine"}],
    "ideal": ["(t+1)*x_1^3 + x_1^2 - x_2^2"],
    "map": ["x_1 + (t+1)*x_2 - 1", "x_1*x_2 + (t-1)*x_2^2 + t"],
    "options": {"variant": "param", "invariants": {"degV": "3", "hV_t": 1, "hV_groups": [1]}}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/E_terms", "equals": 138},
    {"path": "/outputs/newton/contained", "equals": true},
    {"path": "/outputs/newton/hull_vertices",
     "equals": [["0","0","0"],["0","0","11"],["0","3","0"],["0","3","8"],["6","0","0"],["6","0","5"]]},
    {"path": "/outputs/newton/polytopes_equal", "equals": true}
  ])J"));

  fx.push_back(make("masser-param", "masser-parametric", R"J({
    "schema_version": "1", "command": "certify",
    "variables": [{"name": "t", "size": 1, "kind": "parameter"}, {"name": "x", "size": 2, "kind": "affine"}],
    "polys": ["x_1^2", "x_1*x_2 - t^3"],
    "options": {"seed": "0"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/certificate/verified", "equals": true},
    {"path": "/outputs/measures/deg_t_alpha_all", "equals": 6},
    {"path": "/outputs/bounds/all_pass", "equals": true}
  ])J"));

  fx.push_back(make("masser-z", "masser-arithmetic", R"J({
    "schema_version": "1", "command": "certify",
    "variables": [{"name": "x", "size": 2, "kind": "affine"}],
    "polys": ["x_1^2", "x_1*x_2 - 10"],
    "options": {"seed": "0"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/certificate/verified", "equals": true},
    {"path": "/outputs/measures/h_alpha", "at_least": 4.605170185988092},
    {"path": "/outputs/bounds/all_pass", "equals": true}
  ])J"));

  fx.push_back(make("strong-square", "strong-rabinowitsch", R"J({
    "schema_version": "1", "command": "certify-strong",
    "variables": [{"name": "x", "size": 1, "kind": "affine"}],
    "polys": ["x^2"], "g": "x",
    "options": {"seed": "0"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/certificate/verified", "equals": true},
    {"path": "/outputs/certificate/mu", "at_least": 1},
    {"path": "/outputs/bounds/all_pass", "equals": true}
  ])J"));

  fx.push_back(make("strong-unit-g", "strong-trivial-g", R"J({
    "schema_version": "1", "command": "certify-strong",
    "variables": [{"name": "x", "size": 1, "kind": "affine"}],
    "polys": ["x", "x - 1"], "g": "1",
    "options": {"seed": "0"}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/certificate/verified", "equals": true},
    {"path": "/outputs/certificate/mu", "equals": 0}
  ])J"));

  fx.push_back(make("unit-resultant", "macaulay-unit", R"J({
    "schema_version": "1", "command": "resultant",
    "variables": [{"name": "x", "size": 3, "kind": "projective"}],
    "polys": ["x_0", "x_1", "x_2"]
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/resultant", "equals": "1"}
  ])J"));

  fx.push_back(make("weak-z-affine", "weak-z-affine-display", R"J({
    "schema_version": "1", "command": "bounds",
    "options": {"invariants": {"n": 2, "r": 2, "d": [2, 3], "h": [1, 2], "degV": "1", "hV": 0}}
  })J",
                    R"J([
    {"path": "/status", "equals": "ok"},
    {"path": "/outputs/evaluators/weak_Z/deg", "equals": "6"},
    {"path": "/outputs/evaluators/weak_Z/ht", "approx": 161.50603959367362, "tol": 1e-9}
  ])J"));

  std::sort(fx.begin(), fx.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  return fx;
}

}  // namespace mh
