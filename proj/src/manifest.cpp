#include "multiheight/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "multiheight/bounds.hpp"
#include "multiheight/chowring.hpp"
#include "multiheight/elim.hpp"
#include "multiheight/hilbert.hpp"
#include "multiheight/measures.hpp"
#include "multiheight/newton.hpp"
#include "multiheight/nullcert.hpp"
#include "multiheight/parse.hpp"
#include "multiheight/resultants.hpp"

namespace mh {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ManifestError(msg); }

struct FieldParseError : ParseError {
  FieldParseError(const ParseError& e, std::string f) : ParseError(e), field(std::move(f)) {}
  std::string field;
};

std::string qstr(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str();
}

mpz_class json_int(const json& j, const std::string& what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    if (j.get<std::string>().empty() || z.set_str(j.get<std::string>(), 10) != 0)
      bad(what + ": not a decimal integer");
    return z;
  }
  bad(what + ": expected an integer or a decimal string");
}

long json_long(const json& j, const std::string& what) {
  mpz_class z = json_int(j, what);
  if (!z.fits_slong_p()) bad(what + ": out of range");
  return z.get_si();
}

double json_real(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      size_t used = 0;
      double v = std::stod(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  bad(what + ": expected a number");
}

uint64_t json_seed(const json& j) {
  mpz_class z = json_int(j, "options.seed");
  if (z < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64) bad("options.seed: must fit in 64 unsigned bits");
  return std::stoull(z.get_str());
}

template <class T>
std::vector<T> json_vec(const json& j, const std::string& what, T (*conv)(const json&, const std::string&)) {
  if (!j.is_array()) bad(what + ": expected an array");
  std::vector<T> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(conv(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

int json_int32(const json& j, const std::string& what) {
  long v = json_long(j, what);
  if (v < INT32_MIN || v > INT32_MAX) bad(what + ": out of range");
  return static_cast<int>(v);
}

const json& opt_field(const json& obj, const char* key) {
  static const json null_value;
  if (!obj.is_object()) return null_value;
  auto it = obj.find(key);
  return it == obj.end() ? null_value : *it;
}

MPoly parse_field(const json& j, const Spec& spec, const std::string& field) {
  if (!j.is_string()) bad(field + ": expected an expression string");
  try {
    return parse_poly(j.get<std::string>(), spec);
  } catch (const ParseError& e) {
    throw FieldParseError(e, field);
  }
}

std::vector<MPoly> parse_list(const json& j, const Spec& spec, const std::string& field) {
  if (j.is_null()) return {};
  if (!j.is_array()) bad(field + ": expected an array of expressions");
  std::vector<MPoly> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(parse_field(j[i], spec, field + "[" + std::to_string(i) + "]"));
  return out;
}

json strings(const std::vector<MPoly>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

json zmatrix(const std::vector<std::vector<mpz_class>>& m) {
  json a = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    a.push_back(r);
  }
  return a;
}

json qpoints(const std::vector<QPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) {
    json r = json::array();
    for (const auto& x : p) r.push_back(qstr(x));
    a.push_back(r);
  }
  return a;
}

std::vector<int> groups_of(const Spec& s, GroupKind k) { return s->groups_of_kind(k); }

std::vector<int> x_groups(const Spec& s) {
  auto g = groups_of(s, GroupKind::affine);
  auto p = groups_of(s, GroupKind::projective);
  g.insert(g.end(), p.begin(), p.end());
  std::sort(g.begin(), g.end());
  return g;
}

int n_affine(const Spec& s) {
  int n = 0;
  for (int g : groups_of(s, GroupKind::affine)) n += s->group(g).size;
  return n;
}

bool ideal_has_parameters(const Ideal& V) {
  auto pg = groups_of(V.spec, GroupKind::parameter);
  if (pg.empty()) return false;
  for (const auto& g : V.gens)
    if (height_t(g, pg) > 0) return true;
  return false;
}

// Invariants of a polynomial family; V-dependent fields come from the
// manifest (or the defaults of an empty ideal).
Invariants family_invariants(const Spec& spec, const std::vector<MPoly>& fs) {
  Invariants inv;
  inv.n = n_affine(spec);
  auto xg = x_groups(spec);
  auto pg = groups_of(spec, GroupKind::parameter);
  for (int g : pg) inv.p.push_back(spec->group(g).size);
  inv.delta.assign(pg.size(), {});
  for (const auto& f : fs) {
    inv.d.push_back(degree_in_groups(f, xg));
    inv.h.push_back(f.has_integer_coeffs() ? height_inf(f) : 0.0);
    inv.ht.push_back(pg.empty() ? 0 : height_t(f, pg));
    inv.supp.push_back(static_cast<long>(f.size()));
    for (size_t l = 0; l < pg.size(); ++l) inv.delta[l].push_back(height_t(f, std::vector<int>{pg[l]}));
  }
  inv.hV_groups.assign(pg.size(), 0);
  return inv;
}

// Fields of options.invariants override the computed ones.
void apply_invariant_overrides(Invariants& inv, const json& o) {
  if (o.is_null()) return;
  if (!o.is_object()) bad("options.invariants: expected an object");
  static const std::set<std::string> known = {"n", "r", "d", "h", "ht", "delta", "p", "supp", "degV",
                                              "hV", "hV_t", "hV_groups", "d0", "h0", "h0_t"};
  for (auto it = o.begin(); it != o.end(); ++it)
    if (!known.count(it.key())) bad("options.invariants: unknown key '" + it.key() + "'");
  const std::string w = "options.invariants.";
  if (o.contains("n")) inv.n = json_int32(o["n"], w + "n");
  if (o.contains("r")) inv.r = json_int32(o["r"], w + "r");
  if (o.contains("d")) inv.d = json_vec<int>(o["d"], w + "d", json_int32);
  if (o.contains("h")) inv.h = json_vec<double>(o["h"], w + "h", json_real);
  if (o.contains("ht")) inv.ht = json_vec<long>(o["ht"], w + "ht", json_long);
  if (o.contains("p")) inv.p = json_vec<int>(o["p"], w + "p", json_int32);
  if (o.contains("supp")) inv.supp = json_vec<long>(o["supp"], w + "supp", json_long);
  if (o.contains("delta")) {
    if (!o["delta"].is_array()) bad(w + "delta: expected an array of arrays");
    inv.delta.clear();
    for (size_t l = 0; l < o["delta"].size(); ++l)
      inv.delta.push_back(json_vec<long>(o["delta"][l], w + "delta[" + std::to_string(l) + "]", json_long));
  }
  if (o.contains("degV")) inv.degV = json_int(o["degV"], w + "degV");
  if (o.contains("hV")) inv.hV = json_real(o["hV"], w + "hV");
  if (o.contains("hV_t")) inv.hV_t = json_long(o["hV_t"], w + "hV_t");
  if (o.contains("hV_groups")) inv.hV_groups = json_vec<long>(o["hV_groups"], w + "hV_groups", json_long);
  if (o.contains("d0")) inv.d0 = json_int32(o["d0"], w + "d0");
  if (o.contains("h0")) inv.h0 = json_real(o["h0"], w + "h0");
  if (o.contains("h0_t")) inv.h0_t = json_long(o["h0_t"], w + "h0_t");
}

json invariants_json(const Invariants& inv) {
  json j;
  j["n"] = inv.n;
  j["r"] = inv.r;
  j["d"] = inv.d;
  j["h"] = inv.h;
  j["ht"] = inv.ht;
  j["delta"] = inv.delta;
  j["p"] = inv.p;
  j["supp"] = inv.supp;
  j["degV"] = inv.degV.get_str();
  j["hV"] = inv.hV;
  j["hV_t"] = inv.hV_t;
  j["hV_groups"] = inv.hV_groups;
  j["d0"] = inv.d0;
  j["h0"] = inv.h0;
  j["h0_t"] = inv.h0_t;
  return j;
}

// One row of a bound table.
struct BoundTable {
  json entries = json::array();
  bool all_pass = true;

  void exact(const std::string& name, const std::string& evaluator, const mpq_class& measured, const mpq_class& bound) {
    bool ok = measured <= bound;
    entries.push_back({{"quantity", name}, {"evaluator", evaluator}, {"measured", qstr(measured)},
                       {"bound", qstr(bound)}, {"exact", true}, {"pass", ok}});
    all_pass = all_pass && ok;
  }
  void real(const std::string& name, const std::string& evaluator, double measured, double bound) {
    bool ok = real_leq(measured, bound);
    entries.push_back({{"quantity", name}, {"evaluator", evaluator}, {"measured", measured}, {"bound", bound},
                       {"exact", false}, {"pass", ok}});
    all_pass = all_pass && ok;
  }
};

bool decreasing(const std::vector<int>& d, size_t upto) {
  for (size_t i = 1; i < std::min(upto, d.size()); ++i)
    if (d[i - 1] < d[i]) return false;
  return true;
}

json skipped_table(const std::string& why) {
  return {{"status", "skipped"}, {"reason", why}, {"entries", json::array()}, {"all_pass", true}};
}

json certificate_bounds(const BezoutCertificate& c, const CertificateMeasures& m, const json& inv_override) {
  const Spec& spec = c.V.spec;
  bool v_given = !c.V.gens.empty();
  if (v_given && (inv_override.is_null() || !inv_override.contains("degV")))
    return skipped_table("deg(V) and the heights of V are not supplied");
  Invariants inv = family_invariants(spec, c.fs);
  inv.r = c.r;
  if (c.g) {
    inv.d0 = std::max(1, degree_in_groups(*c.g, x_groups(spec)));
    inv.h0 = c.g->has_integer_coeffs() ? height_inf(*c.g) : 0.0;
    auto pg = groups_of(spec, GroupKind::parameter);
    inv.h0_t = pg.empty() ? 0 : height_t(*c.g, pg);
  }
  apply_invariant_overrides(inv, inv_override);

  bool integral = c.alpha.has_integer_coeffs();
  for (const auto& f : c.fs) integral = integral && f.has_integer_coeffs();
  for (const auto& g : c.gs) integral = integral && g.has_integer_coeffs();
  const int mgroups = inv.m();
  // Z heights over parameter groups only make sense when V itself is
  // defined over Q.
  const bool z_ok = integral && !ideal_has_parameters(c.V);

  int max_deg = 0;
  for (int d : m.deg_x_gf) max_deg = std::max(max_deg, d);
  double max_hgf = 0.0;
  for (double h : m.h_g_plus_h_f) max_hgf = std::max(max_hgf, h);
  long max_t_all = 0;
  for (long v : m.deg_t_gf_all) max_t_all = std::max(max_t_all, v);

  BoundTable t;
  const int s = inv.s();
  auto per_group = [&](const std::string& ev, const std::vector<mpq_class>& caps) {
    for (int l = 0; l < mgroups && l < static_cast<int>(caps.size()); ++l) {
      long gf = 0;
      for (const auto& row : m.deg_t_gf) gf = std::max(gf, row.at(l));
      std::string gname = spec->group(groups_of(spec, GroupKind::parameter)[l]).name;
      t.exact("deg_" + gname + "(alpha)", ev, m.deg_t_alpha.at(l), caps[l]);
      t.exact("max deg_" + gname + "(g_i f_i)", ev, gf, caps[l]);
    }
  };

  if (c.g) {
    if (!decreasing(inv.d, inv.d.size())) return skipped_table("strong bounds need d_1 >= ... >= d_s");
    if (mgroups == 0 && z_ok) {
      auto b = strong_Z(inv);
      t.exact("mu", "strong_Z", c.mu, mpq_class(b.mu));
      t.exact("max deg_x(g_i f_i)", "strong_Z", max_deg, mpq_class(b.deg));
      t.real("h(alpha)", "strong_Z", m.h_alpha, b.ht);
      t.real("max h(g_i)+h(f_i)", "strong_Z", max_hgf, b.ht);
    } else if (mgroups == 1) {
      auto b = strong_ff(inv);
      t.exact("mu", "strong_ff", c.mu, mpq_class(b.mu));
      t.exact("max deg_x(g_i f_i)", "strong_ff", max_deg, mpq_class(b.deg));
      t.exact("deg_t(alpha)", "strong_ff", m.deg_t_alpha_all, b.deg_t);
      t.exact("max deg_t(g_i f_i)", "strong_ff", max_t_all, b.deg_t);
    } else {
      return skipped_table("no strong bound applies to this coefficient ring");
    }
  } else if (s <= c.r + 1) {
    if (mgroups == 0 && z_ok) {
      auto b = weak_Z(inv);
      t.exact("max deg_x(g_i f_i)", "weak_Z", max_deg, mpq_class(b.deg));
      t.real("h(alpha)", "weak_Z", m.h_alpha, b.ht);
      t.real("max h(g_i)+h(f_i)", "weak_Z", max_hgf, b.ht);
    }
    if (z_ok) {
      auto b = weak_Z_groups(inv);
      t.exact("max deg_x(g_i f_i)", "weak_Z_groups", max_deg, mpq_class(b.deg));
      t.real("h(alpha)", "weak_Z_groups", m.h_alpha, b.ht);
      t.real("max h(g_i)+h(f_i)", "weak_Z_groups", max_hgf, b.ht);
      per_group("weak_Z_groups", b.deg_t);
    }
    if (mgroups == 1) {
      auto b = weak_ff(inv);
      t.exact("max deg_x(g_i f_i)", "weak_ff", max_deg, mpq_class(b.deg));
      t.exact("deg_t(alpha)", "weak_ff", m.deg_t_alpha_all, b.deg_t);
      t.exact("max deg_t(g_i f_i)", "weak_ff", max_t_all, b.deg_t);
    }
    if (mgroups >= 1) {
      auto b = weak_ff_groups(inv);
      t.exact("max deg_x(g_i f_i)", "weak_ff_groups", max_deg, mpq_class(b.deg));
      per_group("weak_ff_groups", b.deg_t_groups);
    }
  } else {
    if (!decreasing(inv.d, static_cast<size_t>(s - 1)))
      return skipped_table("mixed bounds need d_1 >= ... >= d_{s-1}");
    if (mgroups == 0 && z_ok) {
      auto b = mixed_S(inv, BoundKind::Z);
      t.exact("max deg_x(g_i f_i)", "mixed_S_Z", max_deg, mpq_class(b.deg));
      t.real("h(alpha)", "mixed_S_Z", m.h_alpha, b.ht);
      t.real("max h(g_i)+h(f_i)", "mixed_S_Z", max_hgf, b.ht);
    } else if (mgroups == 1) {
      auto b = mixed_S(inv, BoundKind::ff);
      t.exact("max deg_x(g_i f_i)", "mixed_S_ff", max_deg, mpq_class(b.deg));
      t.exact("deg_t(alpha)", "mixed_S_ff", m.deg_t_alpha_all, b.deg_t);
      t.exact("max deg_t(g_i f_i)", "mixed_S_ff", max_t_all, b.deg_t);
    }
  }
  if (t.entries.empty()) return skipped_table("no bound applies to this coefficient ring");
  return {{"status", "checked"}, {"inputs", invariants_json(inv)}, {"entries", t.entries}, {"all_pass", t.all_pass}};
}

json measures_json(const CertificateMeasures& m) {
  return {{"deg_x_gf", m.deg_x_gf},       {"deg_t_alpha", m.deg_t_alpha}, {"deg_t_gf", m.deg_t_gf},
          {"deg_t_alpha_all", m.deg_t_alpha_all}, {"deg_t_gf_all", m.deg_t_gf_all},
          {"h_alpha", m.h_alpha},         {"h_g_plus_h_f", m.h_g_plus_h_f}};
}

struct Context {
  Spec spec;
  json options;
  uint64_t seed = 0;
  UMode mode = UMode::specialized_u;
  double tol = 1e-9;
};

Ideal read_ideal(const json& man, const Context& cx) {
  return Ideal(cx.spec, parse_list(opt_field(man, "ideal"), cx.spec, "ideal"));
}

CertifyOptions certify_options(const Context& cx) {
  CertifyOptions co;
  co.mode = cx.mode;
  co.seed = cx.seed;
  if (const json& r = opt_field(cx.options, "max_retries"); !r.is_null())
    co.max_retries = json_int32(r, "options.max_retries");
  if (const json& u = opt_field(cx.options, "u"); !u.is_null()) {
    if (!u.is_array()) bad("options.u: expected a matrix");
    std::vector<std::vector<mpz_class>> mat;
    for (size_t i = 0; i < u.size(); ++i)
      mat.push_back(json_vec<mpz_class>(u[i], "options.u[" + std::to_string(i) + "]", json_int));
    co.u = mat;
  }
  return co;
}

json certificate_json(const BezoutCertificate& c) {
  json j = {{"alpha", c.alpha.to_string()},
            {"gs", strings(c.gs)},
            {"E", c.E.to_string()},
            {"E_terms", c.E.size()},
            {"delta", c.delta},
            {"r", c.r},
            {"u", zmatrix(c.u)},
            {"v", zmatrix(c.v)},
            {"attempts", c.attempts},
            {"minimal_polynomial_checked", c.minimal_polynomial_checked},
            {"verified", c.verified}};
  if (c.g) {
    j["g"] = c.g->to_string();
    j["mu"] = c.mu;
  }
  return j;
}

int finish_certificate(const BezoutCertificate& c, json& out, const json& inv) {
  out["certificate"] = certificate_json(c);
  CertificateMeasures m = measure(c);
  out["measures"] = measures_json(m);
  out["bounds"] = certificate_bounds(c, m, inv);
  return c.verified && out["bounds"]["all_pass"].get<bool>() ? 0 : 1;
}

int cmd_certify(const json& man, const Context& cx, json& out) {
  Ideal V = read_ideal(man, cx);
  auto fs = parse_list(opt_field(man, "polys"), cx.spec, "polys");
  if (fs.empty()) bad("polys: at least one polynomial is required");
  BezoutCertificate c = certify(V, fs, certify_options(cx));
  return finish_certificate(c, out, opt_field(cx.options, "invariants"));
}

int cmd_certify_strong(const json& man, const Context& cx, json& out) {
  Ideal V = read_ideal(man, cx);
  auto fs = parse_list(opt_field(man, "polys"), cx.spec, "polys");
  if (fs.empty()) bad("polys: at least one polynomial is required");
  if (!man.contains("g")) bad("g: required for certify-strong");
  MPoly g = parse_field(man["g"], cx.spec, "g");
  BezoutCertificate c = strong_certify(V, fs, g, certify_options(cx));
  return finish_certificate(c, out, opt_field(cx.options, "invariants"));
}

json region_json(const NewtonRegion& R) {
  json hs = json::array();
  for (const auto& h : R.half_spaces) {
    json e = {{"label", h.label}, {"exact", h.exact}};
    if (h.exact) {
      json w = json::array();
      for (const auto& x : h.w) w.push_back(qstr(x));
      e["w"] = w;
      e["beta"] = qstr(h.beta);
    } else {
      e["w"] = h.w_real;
      e["beta"] = h.beta_real;
    }
    hs.push_back(e);
  }
  return {{"dim_a", R.dim_a}, {"dim_c", R.dim_c}, {"has_height", R.has_height}, {"half_spaces", hs}};
}

bool variant_is_Z(PerronVariant v) {
  return v == PerronVariant::Z || v == PerronVariant::Z_nonfinite || v == PerronVariant::rational_Z;
}

json newton_json(const MPoly& E, const PerronRegion& pr, PerronVariant variant, bool extended,
                 const std::string& ygroup) {
  json j;
  j["variant"] = to_string(variant);
  j["region"] = region_json(pr.region);
  NewtonCheck nc = newton_check(E, pr.region, extended, ygroup);
  j["contained"] = nc.contained;
  j["points"] = nc.points;
  j["extended"] = extended;
  json viol = json::array();
  for (const auto& v : nc.violations)
    viol.push_back({{"label", v.label}, {"point", v.point}, {"lhs", v.lhs}, {"rhs", v.rhs}});
  j["violations"] = viol;
  bool all_exact = std::all_of(pr.region.half_spaces.begin(), pr.region.half_spaces.end(),
                               [](const HalfSpace& h) { return h.exact; });
  const int ac_dim = pr.region.dim_a + pr.region.dim_c;
  if (!pr.region.has_height && all_exact && ac_dim <= 4) {
    j["hull_vertices"] = qpoints(hull_vertices(support_points(E, ygroup)));
    j["region_vertices"] = qpoints(region_vertices(pr.region));
    j["polytopes_equal"] = j["hull_vertices"] == j["region_vertices"];
  }
  return j;
}

// max over y-exponents a of h(alpha_a) + <h, a>.
double max_height_weight(const MPoly& E, const std::vector<double>& h, const std::string& ygroup) {
  int yg = E.spec()->group_index(ygroup);
  auto yv = E.spec()->vars_of_group(yg);
  std::map<std::vector<int32_t>, double> best;
  for (const auto& [e, c] : E.terms()) {
    std::vector<int32_t> a;
    for (int v : yv) a.push_back(e[v]);
    double lc = log_abs(c);
    auto it = best.find(a);
    if (it == best.end() || it->second < lc) best[a] = lc;
  }
  double mx = -INFINITY;
  for (const auto& [a, lc] : best) {
    double w = lc;
    for (size_t i = 0; i < a.size() && i < h.size(); ++i) w += h[i] * a[i];
    mx = std::max(mx, w);
  }
  return mx;
}

int cmd_implicitize(const json& man, const Context& cx, json& out) {
  Ideal V = read_ideal(man, cx);
  auto q = parse_list(opt_field(man, "map"), cx.spec, "map");
  if (q.empty()) bad("map: at least one polynomial is required");
  std::string yg = "y";
  if (const json& y = opt_field(cx.options, "ygroup"); y.is_string()) yg = y.get<std::string>();
  MPoly E = implicit_equation(V, q, yg);
  out["E"] = E.to_string();
  out["E_variables"] = spec_to_json(E.spec());
  out["E_terms"] = E.size();
  int ygi = E.spec()->group_index(yg);
  json degy = json::array();
  for (int v : E.spec()->vars_of_group(ygi)) degy.push_back(E.degree_in_var(v));
  out["deg_y"] = degy;
  auto pg = groups_of(E.spec(), GroupKind::parameter);
  out["deg_t"] = pg.empty() ? 0L : height_t(E, pg);

  const json& var = opt_field(cx.options, "variant");
  if (var.is_null()) return 0;
  if (!var.is_string()) bad("options.variant: expected a string");
  PerronVariant pv;
  try {
    pv = perron_variant_from_string(var.get<std::string>());
  } catch (const Error& e) {
    bad(std::string("options.variant: ") + e.what());
  }
  if (pv == PerronVariant::rational_param || pv == PerronVariant::rational_Z)
    bad("options.variant: rational variants are evaluated by the bounds command");
  Invariants inv = family_invariants(cx.spec, q);
  inv.r = static_cast<int>(q.size()) - 1;
  const json& io = opt_field(cx.options, "invariants");
  if (!V.gens.empty() && (io.is_null() || !io.contains("degV")))
    bad("options.invariants: degV and the heights of V are required when an ideal is given");
  apply_invariant_overrides(inv, io);
  PerronRegion pr = perron_region(inv, pv);
  bool extended = variant_is_Z(pv);
  if (const json& ex = opt_field(cx.options, "extended"); ex.is_boolean()) extended = ex.get<bool>();
  out["invariants"] = invariants_json(inv);
  out["newton"] = newton_json(E, pr, pv, extended, yg);
  if (variant_is_Z(pv)) out["max_height_weight"] = max_height_weight(E, inv.h, yg);
  bool ok = out["newton"]["contained"].get<bool>();
  return ok ? 0 : 1;
}

int cmd_newton_check(const json& man, const Context& cx, json& out) {
  auto ps = parse_list(opt_field(man, "polys"), cx.spec, "polys");
  if (ps.size() != 1) bad("polys: exactly one polynomial E is required");
  std::string yg = "y";
  if (const json& y = opt_field(cx.options, "ygroup"); y.is_string()) yg = y.get<std::string>();
  if (!cx.spec->find_group(yg)) bad("variables: no group named '" + yg + "'");
  const json& var = opt_field(cx.options, "variant");
  if (!var.is_string()) bad("options.variant: required");
  PerronVariant pv;
  try {
    pv = perron_variant_from_string(var.get<std::string>());
  } catch (const Error& e) {
    bad(std::string("options.variant: ") + e.what());
  }
  const json& io = opt_field(cx.options, "invariants");
  if (io.is_null()) bad("options.invariants: required");
  Invariants inv;
  inv.hV_groups.clear();
  apply_invariant_overrides(inv, io);
  PerronRegion pr = perron_region(inv, pv);
  bool extended = variant_is_Z(pv);
  if (const json& ex = opt_field(cx.options, "extended"); ex.is_boolean()) extended = ex.get<bool>();
  out["newton"] = newton_json(ps[0], pr, pv, extended, yg);
  return out["newton"]["contained"].get<bool>() ? 0 : 1;
}

int cmd_hilbert(const json& man, const Context& cx, json& out) {
  Ideal I = read_ideal(man, cx);
  HilbertOptions ho;
  if (const json& m = opt_field(cx.options, "method"); m.is_string()) {
    if (m == "standard") ho.method = HilbertMethod::standard_monomials;
    else if (m == "rank") ho.method = HilbertMethod::rank;
    else bad("options.method: expected 'standard' or 'rank'");
  }
  HilbertData hd = hilbert_fit(I, ho);
  out["r"] = hd.r;
  out["dims"] = hd.dims;
  out["stabilized_from"] = hd.stabilized_from;
  json md = json::array();
  for (const auto& [b, v] : hd.mixed_degrees) md.push_back({{"b", b}, {"deg", v.get_str()}});
  out["mixed_degrees"] = md;
  json poly = json::array();
  for (const auto& [e, c] : hd.poly) poly.push_back({{"exponent", e}, {"coeff", qstr(c)}});
  out["hilbert_polynomial"] = poly;
  return 0;
}

int cmd_chow(const json& man, const Context& cx, json& out) {
  auto ps = parse_list(opt_field(man, "polys"), cx.spec, "polys");
  if (ps.empty()) bad("polys: at least one divisor is required");
  DivisorMode dm = groups_of(cx.spec, GroupKind::parameter).empty() ? DivisorMode::canonical_Z : DivisorMode::ff_t;
  if (const json& m = opt_field(cx.options, "divisor_mode"); m.is_string()) {
    if (m == "ff_t") dm = DivisorMode::ff_t;
    else if (m == "canonical_Z") dm = DivisorMode::canonical_Z;
    else bad("options.divisor_mode: expected 'ff_t' or 'canonical_Z'");
  }
  std::vector<ChowClass> cls;
  json arr = json::array();
  for (const auto& f : ps) {
    cls.push_back(class_of_divisor(f, dm, cx.tol));
    arr.push_back(cls.back().to_string());
  }
  out["classes"] = arr;
  ChowClass prod = cls[0];
  for (size_t i = 1; i < cls.size(); ++i) prod = cc_mul(prod, cls[i]);
  out["product"] = prod.to_string();
  int total = 0;
  for (int d : cls[0].dims()) total += d;
  if (static_cast<int>(cls.size()) == total) out["intersection_count"] = intersection_count(cls).get_str();
  return 0;
}

int cmd_resultant(const json& man, const Context& cx, json& out) {
  if (const json& idx = opt_field(cx.options, "index"); !idx.is_null()) {
    Ideal V = read_ideal(man, cx);
    auto c = json_vec<int>(idx, "options.index", json_int32);
    EliminantResult er = eliminant_with_multiplicity(V, c);
    out["elim"] = er.elim.to_string();
    out["elim_variables"] = spec_to_json(er.elim.spec());
    out["nu"] = er.nu;
    json pr = json::array(), ac = json::array();
    for (const auto& x : er.predicted) pr.push_back(x.get_str());
    for (const auto& x : er.actual) ac.push_back(x.get_str());
    out["predicted_degrees"] = pr;
    out["actual_degrees"] = ac;
    return 0;
  }
  auto ps = parse_list(opt_field(man, "polys"), cx.spec, "polys");
  if (ps.empty()) bad("polys: forms are required (or options.index with an ideal)");
  MacaulayOptions mo;
  mo.seed = cx.seed;
  MPoly r = macaulay_resultant(ps, mo);
  out["resultant"] = r.to_string();
  out["resultant_variables"] = spec_to_json(r.spec());
  return 0;
}

template <class F>
json try_eval(F&& f) {
  try {
    json j = f();
    j["applicable"] = true;
    return j;
  } catch (const BoundInputError& e) {
    return {{"applicable", false}, {"reason", e.what()}};
  }
}

int cmd_bounds(const json&, const Context& cx, json& out) {
  const json& io = opt_field(cx.options, "invariants");
  if (io.is_null()) bad("options.invariants: required");
  Invariants inv;
  inv.hV_groups.clear();
  apply_invariant_overrides(inv, io);
  out["inputs"] = invariants_json(inv);
  auto qs = [](const std::vector<mpq_class>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(qstr(x));
    return a;
  };
  json ev;
  ev["weak_Z"] = try_eval([&] {
    auto b = weak_Z(inv);
    return json{{"deg", b.deg.get_str()}, {"ht", b.ht}};
  });
  ev["weak_Z_groups"] = try_eval([&] {
    auto b = weak_Z_groups(inv);
    return json{{"deg", b.deg.get_str()}, {"ht", b.ht}, {"deg_t", qs(b.deg_t)}};
  });
  ev["weak_ff"] = try_eval([&] {
    auto b = weak_ff(inv);
    return json{{"deg", b.deg.get_str()}, {"deg_t", qstr(b.deg_t)}};
  });
  ev["weak_ff_groups"] = try_eval([&] {
    auto b = weak_ff_groups(inv);
    return json{{"deg", b.deg.get_str()}, {"deg_t", qs(b.deg_t_groups)}};
  });
  ev["strong_Z"] = try_eval([&] {
    auto b = strong_Z(inv);
    return json{{"mu", b.mu.get_str()}, {"deg", b.deg.get_str()}, {"ht", b.ht}};
  });
  ev["strong_ff"] = try_eval([&] {
    auto b = strong_ff(inv);
    return json{{"mu", b.mu.get_str()}, {"deg", b.deg.get_str()}, {"deg_t", qstr(b.deg_t)}};
  });
  ev["mixed_S_ff"] = try_eval([&] {
    auto b = mixed_S(inv, BoundKind::ff);
    return json{{"deg", b.deg.get_str()}, {"deg_t", qstr(b.deg_t)}};
  });
  ev["mixed_S_Z"] = try_eval([&] {
    auto b = mixed_S(inv, BoundKind::Z);
    return json{{"deg", b.deg.get_str()}, {"ht", b.ht}};
  });
  ev["resultant_cofactor_height"] = try_eval([&] { return json{{"ht", resultant_cofactor_height(inv)}}; });
  out["evaluators"] = ev;

  if (const json& var = opt_field(cx.options, "variant"); !var.is_null()) {
    if (!var.is_string()) bad("options.variant: expected a string");
    PerronVariant pv;
    try {
      pv = perron_variant_from_string(var.get<std::string>());
    } catch (const Error& e) {
      bad(std::string("options.variant: ") + e.what());
    }
    out["perron"] = try_eval([&] {
      PerronRegion pr = perron_region(inv, pv);
      json j = {{"variant", to_string(pv)}, {"region", region_json(pr.region)}};
      json caps = json::array();
      for (const auto& c : pr.deg_y_caps) caps.push_back(c.get_str());
      j["deg_y_caps"] = caps;
      if (pv == PerronVariant::rational_param) j["deg_t_cap"] = qstr(pr.deg_t_cap);
      if (pv == PerronVariant::rational_Z) j["mahler_cap"] = pr.mahler_cap;
      return j;
    });
  }
  return 0;
}

int cmd_verify_examples(const RunOptions& opts, json& out) {
  json rows = json::array();
  bool all = true;
  RunOptions sub;
  sub.timing = opts.timing;
  for (const auto& f : fixtures()) {
    RunResult r = run_manifest(f.manifest, sub);
    auto fails = check_fixture(f, r.report);
    bool ok = fails.empty();
    all = all && ok;
    json row = {{"name", f.name}, {"anchor", f.anchor}, {"pass", ok}, {"failures", fails}, {"exit_code", r.exit_code}};
    if (opts.timing && r.report.contains("timing")) row["seconds"] = r.report["timing"]["seconds"];
    rows.push_back(row);
  }
  out["fixtures"] = rows;
  out["count"] = rows.size();
  out["all_pass"] = all;
  return all ? 0 : 1;
}

struct ErrorInfo {
  std::string code;
  std::string module;
  int exit = 1;
};

json error_json(const ErrorInfo& info, const std::string& msg) {
  return {{"code", info.code}, {"module", info.module}, {"message", msg}};
}

const std::set<std::string>& known_top_keys() {
  static const std::set<std::string> k = {"schema_version", "command", "variables", "ideal", "polys", "map", "g",
                                          "options"};
  return k;
}

const std::set<std::string>& known_option_keys() {
  static const std::set<std::string> k = {"seed", "mode", "tolerance", "max_retries", "order", "u", "index",
                                          "variant", "invariants", "extended", "ygroup", "method", "divisor_mode"};
  return k;
}

}  // namespace

Spec spec_from_json(const json& vars) {
  if (!vars.is_array()) bad("variables: expected an array of group declarations");
  std::vector<VarGroup> groups;
  for (size_t i = 0; i < vars.size(); ++i) {
    const json& g = vars[i];
    std::string w = "variables[" + std::to_string(i) + "]";
    if (!g.is_object() || !g.contains("name") || !g["name"].is_string()) bad(w + ": needs a string 'name'");
    VarGroup vg;
    vg.name = g["name"].get<std::string>();
    vg.size = g.contains("size") ? json_int32(g["size"], w + ".size") : 1;
    if (vg.size < 1) bad(w + ".size: must be positive");
    if (g.contains("kind")) {
      if (!g["kind"].is_string()) bad(w + ".kind: expected a string");
      try {
        vg.kind = group_kind_from_string(g["kind"].get<std::string>());
      } catch (const Error& e) {
        bad(w + ".kind: " + e.what());
      }
    }
    if (g.contains("vars")) {
      if (!g["vars"].is_array()) bad(w + ".vars: expected an array of names");
      for (const auto& n : g["vars"]) {
        if (!n.is_string()) bad(w + ".vars: expected strings");
        vg.vars.push_back(n.get<std::string>());
      }
    }
    groups.push_back(std::move(vg));
  }
  try {
    return make_spec(std::move(groups));
  } catch (const ManifestError&) {
    throw;
  } catch (const Error& e) {
    bad(std::string("variables: ") + e.what());
  }
}

json spec_to_json(const Spec& s) {
  json a = json::array();
  for (int g = 0; g < s->ngroups(); ++g) {
    const VarGroup& vg = s->group(g);
    json names = json::array();
    for (int v : s->vars_of_group(g)) names.push_back(s->var_name(v));
    a.push_back({{"name", vg.name}, {"size", vg.size}, {"kind", to_string(vg.kind)}, {"vars", names}});
  }
  return a;
}

RunResult run_manifest(const json& man, const RunOptions& opts) {
  RunResult res;
  json& rep = res.report;
  rep["schema_version"] = kSchemaVersion;
  rep["inputs"] = man;
  rep["command"] = man.is_object() && man.contains("command") && man["command"].is_string()
                       ? man["command"]
                       : json(nullptr);
  Context cx;
  cx.seed = opts.seed.value_or(0);
  rep["seed"] = std::to_string(cx.seed);
  rep["mode"] = "random-u";
  rep["tolerance"] = cx.tol;
  auto t0 = std::chrono::steady_clock::now();
  json out = json::object();
  ErrorInfo info;
  std::string msg;
  json position;
  std::string field;
  bool failed_with_error = true;
  try {
    if (!man.is_object()) bad("manifest: expected a JSON object");
    for (auto it = man.begin(); it != man.end(); ++it)
      if (!known_top_keys().count(it.key())) bad("manifest: unknown key '" + it.key() + "'");
    if (man.contains("schema_version")) {
      const json& sv = man["schema_version"];
      if (!(sv == json(kSchemaVersion) || sv == json(1))) bad("schema_version: unsupported version");
    }
    if (!man.contains("command") || !man["command"].is_string()) bad("command: required");
    const std::string cmd = man["command"].get<std::string>();
    cx.options = opt_field(man, "options");
    if (!cx.options.is_null()) {
      if (!cx.options.is_object()) bad("options: expected an object");
      for (auto it = cx.options.begin(); it != cx.options.end(); ++it)
        if (!known_option_keys().count(it.key())) bad("options: unknown key '" + it.key() + "'");
    }
    if (!opts.seed && cx.options.contains("seed")) cx.seed = json_seed(cx.options["seed"]);
    rep["seed"] = std::to_string(cx.seed);
    std::string mode = "random-u";
    if (opts.mode) mode = *opts.mode;
    else if (const json& m = opt_field(cx.options, "mode"); !m.is_null()) {
      if (!m.is_string()) bad("options.mode: expected a string");
      mode = m.get<std::string>();
    }
    if (mode == "random-u") cx.mode = UMode::specialized_u;
    else if (mode == "symbolic-u") cx.mode = UMode::symbolic_u;
    else bad("mode: expected 'random-u' or 'symbolic-u'");
    rep["mode"] = mode;
    if (opts.tol) cx.tol = *opts.tol;
    else if (const json& t = opt_field(cx.options, "tolerance"); !t.is_null()) cx.tol = json_real(t, "options.tolerance");
    if (!(cx.tol > 0)) bad("tolerance: must be positive");
    rep["tolerance"] = cx.tol;

    if (cmd == "verify-examples") {
      res.exit_code = cmd_verify_examples(opts, out);
    } else if (cmd == "bounds") {
      res.exit_code = cmd_bounds(man, cx, out);
    } else {
      if (!man.contains("variables")) bad("variables: required");
      cx.spec = spec_from_json(man["variables"]);
      if (cmd == "certify") res.exit_code = cmd_certify(man, cx, out);
      else if (cmd == "certify-strong") res.exit_code = cmd_certify_strong(man, cx, out);
      else if (cmd == "implicitize") res.exit_code = cmd_implicitize(man, cx, out);
      else if (cmd == "newton-check") res.exit_code = cmd_newton_check(man, cx, out);
      else if (cmd == "hilbert") res.exit_code = cmd_hilbert(man, cx, out);
      else if (cmd == "chow") res.exit_code = cmd_chow(man, cx, out);
      else if (cmd == "resultant") res.exit_code = cmd_resultant(man, cx, out);
      else bad("command: unknown command '" + cmd + "'");
    }
    failed_with_error = false;
  } catch (const FieldParseError& e) {
    info = {"parse_error", "cli", 2};
    msg = e.what();
    position = e.pos;
    field = e.field;
  } catch (const ParseError& e) {
    info = {"parse_error", "cli", 2};
    msg = e.what();
    position = e.pos;
  } catch (const ManifestError& e) {
    info = {"invalid_manifest", "cli", 2};
    msg = e.what();
  } catch (const json::exception& e) {
    info = {"invalid_manifest", "cli", 2};
    msg = e.what();
  } catch (const SpecMismatch& e) {
    info = {"spec_mismatch", "polycore", 2};
    msg = e.what();
  } catch (const BoundInputError& e) {
    info = {"bound_input", "bounds", 2};
    msg = e.what();
  } catch (const CertificationFailed& e) {
    info = {"certification_failed", "nullcert", 1};
    msg = e.what();
  } catch (const VerificationFailed& e) {
    info = {"verification_failed", "nullcert", 1};
    msg = e.what();
  } catch (const MacaulaySingular& e) {
    info = {"macaulay_singular", "resultants", 1};
    msg = e.what();
  } catch (const MultiplicityMismatch& e) {
    info = {"multiplicity_mismatch", "resultants", 1};
    msg = e.what();
  } catch (const NonPrincipalElimination& e) {
    info = {"non_principal_elimination", "elim", 1};
    msg = e.what();
  } catch (const ZeroElimination& e) {
    info = {"zero_elimination", "elim", 1};
    msg = e.what();
  } catch (const DegenerateMinimalPolynomial& e) {
    info = {"degenerate_minimal_polynomial", "elim", 1};
    msg = e.what();
  } catch (const GroebnerCapExceeded& e) {
    info = {"groebner_cap_exceeded", "elim", 1};
    msg = e.what();
  } catch (const HilbertStabilizationError& e) {
    info = {"hilbert_not_stabilized", "hilbert", 1};
    msg = e.what();
  } catch (const MahlerToleranceError& e) {
    info = {"mahler_tolerance", "measures", 1};
    msg = e.what();
  } catch (const Error& e) {
    info = {"computation_error", "core", 1};
    msg = e.what();
  } catch (const std::exception& e) {
    info = {"internal_error", "core", 1};
    msg = e.what();
  }
  if (failed_with_error) {
    res.exit_code = info.exit;
    json err = error_json(info, msg);
    if (!position.is_null()) err["position"] = position;
    if (!field.empty()) err["field"] = field;
    rep["error"] = err;
    rep["status"] = "error";
  } else {
    rep["status"] = res.exit_code == 0 ? "ok" : "failed";
  }
  rep["outputs"] = out;
  rep["exit_code"] = res.exit_code;
  if (opts.timing)
    rep["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  return res;
}

RunResult run_manifest_text(const std::string& text, const RunOptions& opts) {
  json man;
  try {
    man = json::parse(text);
  } catch (const json::parse_error& e) {
    RunResult res;
    res.exit_code = 2;
    res.report = {{"schema_version", kSchemaVersion},
                  {"command", nullptr},
                  {"seed", std::to_string(opts.seed.value_or(0))},
                  {"mode", opts.mode.value_or("random-u")},
                  {"tolerance", opts.tol.value_or(1e-9)},
                  {"inputs", nullptr},
                  {"outputs", json::object()},
                  {"status", "error"},
                  {"exit_code", 2},
                  {"error", {{"code", "invalid_json"}, {"module", "cli"}, {"message", e.what()}, {"position", e.byte}}}};
    return res;
  }
  return run_manifest(man, opts);
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    return;
  }
  if (j.is_array() && !j.empty() && (j[0].is_object())) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  os << "command: " << (report["command"].is_string() ? report["command"].get<std::string>() : "-") << "\n";
  os << "status: " << report.value("status", "") << "\n";
  os << "seed: " << report.value("seed", "") << "\n";
  os << "mode: " << report.value("mode", "") << "\n";
  if (report.contains("error")) flatten(report["error"], "error", os);
  if (report.contains("outputs") && !report["outputs"].empty()) flatten(report["outputs"], "", os);
  if (report.contains("timing")) flatten(report["timing"], "timing", os);
  return os.str();
}

std::vector<std::string> check_fixture(const Fixture& f, const json& report) {
  std::vector<std::string> fails;
  for (const auto& e : f.expect) {
    const std::string path = e.at("path").get<std::string>();
    json::json_pointer ptr(path);
    if (!report.contains(ptr)) {
      fails.push_back(path + ": missing");
      continue;
    }
    const json& got = report.at(ptr);
    if (e.contains("equals")) {
      if (got != e["equals"]) fails.push_back(path + ": expected " + e["equals"].dump() + ", got " + got.dump());
    } else if (e.contains("approx")) {
      double tol = e.value("tol", 1e-9);
      if (!got.is_number() || std::fabs(got.get<double>() - e["approx"].get<double>()) > tol)
        fails.push_back(path + ": expected " + e["approx"].dump() + " within " + std::to_string(tol) + ", got " +
                        got.dump());
    } else if (e.contains("at_least") || e.contains("at_most")) {
      bool lower = e.contains("at_least");
      double lim = e[lower ? "at_least" : "at_most"].get<double>();
      double v = got.is_string() ? std::stod(got.get<std::string>()) : got.get<double>();
      if (lower ? !(v >= lim) : !(v <= lim))
        fails.push_back(path + ": " + got.dump() + (lower ? " < " : " > ") + std::to_string(lim));
    } else if (e.contains("poly")) {
      try {
        Spec s = spec_from_json(report.at(json::json_pointer(e.at("variables").get<std::string>())));
        MPoly p = parse_poly(got.get<std::string>(), s);
        MPoly q = parse_poly(e["poly"].get<std::string>(), s);
        if (p != q && p != -q) fails.push_back(path + ": polynomial differs from " + e["poly"].get<std::string>());
      } catch (const std::exception& ex) {
        fails.push_back(path + ": " + ex.what());
      }
    } else {
      fails.push_back(path + ": expectation has no comparison");
    }
  }
  return fails;
}

}  // namespace mh
