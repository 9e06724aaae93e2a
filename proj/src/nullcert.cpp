#include "multiheight/nullcert.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "multiheight/measures.hpp"

namespace mh {

namespace {

std::vector<int> vars_of_kind(const Spec& s, GroupKind k) {
  std::vector<int> out;
  for (int g : s->groups_of_kind(k))
    for (int v : s->vars_of_group(g)) out.push_back(v);
  return out;
}

// Uniform integer in [-B, B]; plain modulo keeps the stream portable.
mpz_class draw(std::mt19937_64& rng, long B) {
  uint64_t span = static_cast<uint64_t>(2 * B + 1);
  return mpz_class(static_cast<long>(rng() % span)) - B;
}

std::vector<std::vector<mpz_class>> draw_matrix(std::mt19937_64& rng, int rows, int cols, long B) {
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (auto& row : m)
    for (auto& x : row) x = draw(rng, B);
  return m;
}

struct IdealReducer {
  std::optional<GroebnerBasis> gb;
  Spec spec;

  IdealReducer(const Ideal& V, const Spec& target) : spec(target) {
    std::vector<MPoly> gens;
    for (const auto& g : V.gens)
      if (!g.is_zero()) gens.push_back(respec(g, target));
    if (!gens.empty()) gb = groebner(Ideal(target, gens), MonomialOrder::graded_lex());
  }
  bool zero(const MPoly& f) const { return gb ? gb->contains(f) : f.is_zero(); }
};

// Enumerates b with |b| = j, b_k <= a_k for k < i, b_k = 0 for k >= i and
// b_{i-1} >= 1, returning sum prod C(a_k, b_k) l_k^{a_k - b_k} f_1^{b_1} ...
// f_i^{b_i - 1}.
MPoly cofactor_sum(const std::vector<int>& a, int j, int i, const std::vector<std::vector<MPoly>>& lpow,
                   const std::vector<std::vector<MPoly>>& fpow, const Spec& work) {
  int R = static_cast<int>(a.size());
  MPoly tail = MPoly::constant(work, 1);
  for (int k = i; k < R; ++k) tail = tail * lpow[k][a[k]];
  MPoly out(work);
  std::vector<int> b(R, 0);
  std::function<void(int, int, MPoly)> rec = [&](int k, int left, MPoly acc) {
    if (k == i - 1) {
      int bi = left;
      if (bi < 1 || bi > a[k]) return;
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), a[k], bi);
      out += acc * lpow[k][a[k] - bi] * fpow[k][bi - 1] * mpq_class(c);
      return;
    }
    for (int bk = 0; bk <= std::min(a[k], left); ++bk) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), a[k], bk);
      rec(k + 1, left - bk, acc * lpow[k][a[k] - bk] * fpow[k][bk] * mpq_class(c));
    }
  };
  rec(0, j, tail);
  return out;
}

// Restricts a polynomial of `from` to the first groups forming `to`, keeping
// the terms whose remaining exponents equal `pattern` (indexed by `extra`).
MPoly restrict_terms(const MPoly& f, const Spec& to, const std::vector<int>& extra, const Exponent& pattern) {
  std::vector<Term> terms;
  int nv = to->nvars();
  for (const auto& [e, c] : f.terms()) {
    bool match = true;
    for (size_t k = 0; k < extra.size(); ++k)
      if (e[extra[k]] != pattern[k]) match = false;
    if (!match) continue;
    terms.emplace_back(Exponent(e.begin(), e.begin() + nv), c);
  }
  return MPoly::from_terms(to, std::move(terms), f.has_integer_coeffs() ? CoeffDomain::Integer : CoeffDomain::Rational);
}

}  // namespace

LinearSystem build_system(const Ideal& V, const std::vector<MPoly>& fs, UMode mode,
                          const std::vector<std::vector<mpz_class>>& u) {
  auto xv = vars_of_kind(V.spec, GroupKind::affine);
  int n = static_cast<int>(xv.size());
  if (n == 0) throw Error("build_system needs affine variables");
  int r = affine_dimension(V);
  if (r < 0) throw Error("build_system: the variety is empty");
  int R = r + 1;
  int s = static_cast<int>(fs.size());
  if (s > R) throw Error("build_system needs s <= r+1; combine the inputs first");
  std::vector<int> xgroups = V.spec->groups_of_kind(GroupKind::affine);
  for (const auto& f : fs) {
    if (!same_spec(f.spec(), V.spec)) throw SpecMismatch("input polynomial is not in the spec of V");
    if (degree_in_groups(f, xgroups) < 1) throw Error("input polynomials must be nonconstant in x");
  }
  LinearSystem sys;
  if (mode == UMode::symbolic_u) {
    std::vector<VarGroup> ug;
    for (int i = 1; i <= R; ++i) ug.push_back(VarGroup{"u" + std::to_string(i), n, GroupKind::parameter, {}});
    sys.work = spec_concat(V.spec, make_spec(ug));
  } else {
    if (static_cast<int>(u.size()) != R) throw Error("u must have r+1 rows");
    for (const auto& row : u)
      if (static_cast<int>(row.size()) != n) throw Error("u rows must have one entry per affine variable");
    sys.work = V.spec;
    sys.u = u;
  }
  sys.qspec = spec_concat(sys.work, make_spec({VarGroup{"z", 1, GroupKind::auxiliary, {}}}));
  for (int i = 0; i < R; ++i) {
    MPoly l(sys.work);
    for (int j = 0; j < n; ++j) {
      MPoly x = MPoly::variable(sys.work, xv[j]);
      if (mode == UMode::symbolic_u)
        l += MPoly::variable(sys.work, sys.work->offset(V.spec->ngroups() + i) + j) * x;
      else
        l += x * mpq_class(u[i][j]);
    }
    sys.ell.push_back(l);
  }
  MPoly z = MPoly::variable(sys.qspec, "z");
  for (int i = 0; i < R; ++i) {
    MPoly l = respec(sys.ell[i], sys.qspec);
    sys.q.push_back(i < s ? z * respec(fs[i], sys.qspec) + l : l);
  }
  return sys;
}

bool verify_identity(const BezoutCertificate& c) {
  if (c.alpha.is_zero()) return false;
  MPoly lhs = c.alpha;
  if (c.g) lhs = lhs * mp_pow(*c.g, c.mu);
  for (size_t i = 0; i < c.gs.size(); ++i) lhs -= c.gs[i] * c.fs[i];
  return IdealReducer(c.V, c.V.spec).zero(lhs);
}

BezoutCertificate certify(const Ideal& V, const std::vector<MPoly>& fs, const CertifyOptions& opts) {
  if (fs.empty()) throw Error("certify needs at least one polynomial");
  auto xv = vars_of_kind(V.spec, GroupKind::affine);
  int n = static_cast<int>(xv.size());
  int r = affine_dimension(V);
  if (r < 0) throw CertificationFailed("the variety is empty");
  int R = r + 1;
  int s = static_cast<int>(fs.size());
  if (s > R && opts.mode == UMode::symbolic_u)
    throw Error("symbolic mode needs s <= r+1; combine the inputs first");
  long B = 8L * R * n;
  std::mt19937_64 rng(opts.seed);

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    BezoutCertificate cert;
    cert.V = V;
    cert.fs = fs;
    cert.mode = opts.mode;
    cert.seed = opts.seed;
    cert.r = r;
    cert.attempts = attempt + 1;

    std::vector<MPoly> fbar = fs;
    if (s > R) {
      cert.v = draw_matrix(rng, r, s - R, B);
      fbar.assign(fs.begin(), fs.begin() + r);
      for (int j = 0; j < r; ++j)
        for (int i = 0; i < s - R; ++i) fbar[j] += fs[r + i] * mpq_class(cert.v[j][i]);
      fbar.push_back(fs[s - 1]);
    }
    int sb = static_cast<int>(fbar.size());

    if (opts.mode == UMode::specialized_u)
      cert.u = (attempt == 0 && opts.u) ? *opts.u : draw_matrix(rng, R, n, B);
    LinearSystem sys = build_system(V, fbar, opts.mode, cert.u);

    MPoly E;
    try {
      E = minimal_polynomial(V, sys.q, "z", "y");
    } catch (const DegenerateMinimalPolynomial&) {
      continue;
    } catch (const NonPrincipalElimination&) {
      continue;
    } catch (const ZeroElimination&) {
      continue;
    }
    const Spec& es = E.spec();
    std::vector<int> coeff_vars = vars_of_kind(es, GroupKind::parameter);
    E = primitive_in(E, coeff_vars);
    int zv = es->var_index("z");
    int yg = es->group_index("y");
    int yoff = es->offset(yg);
    int delta = E.degree_in_var(zv);
    if (delta < 1) continue;

    // alpha_{0,0}: coefficient of z^delta, which must not involve y.
    bool yfree = true;
    std::vector<Term> top;
    for (const auto& [e, c] : E.terms()) {
      if (e[zv] != delta) continue;
      for (int k = 0; k < R; ++k)
        if (e[yoff + k] != 0) yfree = false;
      top.push_back({e, c});
    }
    if (!yfree || top.empty()) continue;
    if (MPoly::from_terms(es, top).leading_term().second < 0) E = -E;

    // Map E's coefficient variables into the work spec.
    std::vector<int> to_work(es->nvars(), -1);
    for (int v = 0; v < es->nvars(); ++v) {
      if (v == zv || es->group_of_var(v) == yg) continue;
      to_work[v] = sys.work->var_index(es->var_name(v));
    }
    std::map<std::pair<std::vector<int>, int>, std::vector<Term>> coeffs;
    for (const auto& [e, c] : E.terms()) {
      std::vector<int> a(R);
      for (int k = 0; k < R; ++k) a[k] = e[yoff + k];
      int j = delta - e[zv];
      Exponent w(sys.work->nvars(), 0);
      for (int v = 0; v < es->nvars(); ++v)
        if (to_work[v] >= 0) w[to_work[v]] = e[v];
      coeffs[{a, j}].push_back({w, c});
    }
    MPoly alpha00 = MPoly::from_terms(sys.work, coeffs[{std::vector<int>(R, 0), 0}], CoeffDomain::Integer);

    IdealReducer work_red(V, sys.work);
    if (opts.check_minimal_polynomial) {
      std::map<int, MPoly> bind;
      for (int k = 0; k < R; ++k) bind.emplace(yoff + k, sys.q[k]);
      MPoly sub = substitute(E, bind, sys.qspec);
      IdealReducer qred(V, sys.qspec);
      if (!qred.zero(sub)) throw VerificationFailed("minimal polynomial does not vanish on the graph");
      cert.minimal_polynomial_checked = true;
    }

    std::vector<int> amax(R, 0);
    for (const auto& [key, t] : coeffs)
      for (int k = 0; k < R; ++k) amax[k] = std::max(amax[k], key.first[k]);
    std::vector<std::vector<MPoly>> lpow(R), fpow(sb);
    for (int k = 0; k < R; ++k) {
      lpow[k].push_back(MPoly::constant(sys.work, 1));
      for (int p = 1; p <= amax[k]; ++p) lpow[k].push_back(lpow[k].back() * sys.ell[k]);
    }
    for (int k = 0; k < sb; ++k) {
      MPoly fk = respec(fbar[k], sys.work);
      fpow[k].push_back(MPoly::constant(sys.work, 1));
      for (int p = 1; p <= amax[k]; ++p) fpow[k].push_back(fpow[k].back() * fk);
    }
    std::vector<MPoly> gt(sb, MPoly(sys.work));
    for (const auto& [key, t] : coeffs) {
      const auto& [a, j] = key;
      if (j < 1) continue;
      MPoly al = MPoly::from_terms(sys.work, t, CoeffDomain::Integer);
      for (int i = 1; i <= sb; ++i) {
        MPoly S = cofactor_sum(a, j, i, lpow, fpow, sys.work);
        if (!S.is_zero()) gt[i - 1] -= al * S;
      }
    }
    MPoly check = alpha00;
    for (int i = 0; i < sb; ++i) check -= gt[i] * respec(fbar[i], sys.work);
    if (!work_red.zero(check)) throw VerificationFailed("alpha_00 - sum g_i f_i is not in I(V)");

    // Symbolic mode: coefficient of the lexicographically smallest u-monomial.
    std::vector<int> uvars;
    for (int v = V.spec->nvars(); v < sys.work->nvars(); ++v) uvars.push_back(v);
    Exponent pattern(uvars.size(), 0);
    if (!uvars.empty()) {
      bool first = true;
      for (const auto& [e, c] : alpha00.terms()) {
        Exponent p(uvars.size());
        for (size_t k = 0; k < uvars.size(); ++k) p[k] = e[uvars[k]];
        if (first || p < pattern) pattern = p;
        first = false;
      }
    }
    cert.alpha = restrict_terms(alpha00, V.spec, uvars, pattern);
    std::vector<MPoly> gbar;
    for (const auto& g : gt) gbar.push_back(restrict_terms(g, V.spec, uvars, pattern));

    if (s > R) {
      cert.gs.assign(s, MPoly(V.spec));
      for (int j = 0; j < r; ++j) cert.gs[j] = gbar[j];
      for (int i = 0; i < s - R; ++i)
        for (int j = 0; j < r; ++j) cert.gs[r + i] += gbar[j] * mpq_class(cert.v[j][i]);
      cert.gs[s - 1] = gbar[r];
    } else {
      cert.gs = gbar;
    }
    cert.E = E;
    cert.delta = delta;
    if (cert.alpha.is_zero()) continue;
    cert.verified = verify_identity(cert);
    if (!cert.verified) throw VerificationFailed("extracted identity does not hold on V");
    return cert;
  }
  throw CertificationFailed("no usable minimal polynomial after " + std::to_string(opts.max_retries + 1) +
                            " attempts; the inputs may share a zero on V");
}

BezoutCertificate strong_certify(const Ideal& V, const std::vector<MPoly>& fs, const MPoly& g,
                                 const CertifyOptions& opts) {
  if (g.is_zero()) throw Error("strong_certify needs g != 0");
  if (!same_spec(g.spec(), V.spec)) throw SpecMismatch("g is not in the spec of V");
  std::vector<int> xgroups = V.spec->groups_of_kind(GroupKind::affine);
  int dg = degree_in_groups(g, xgroups);
  if (dg <= 0) {
    BezoutCertificate c = certify(V, fs, opts);
    c.g = g;
    c.mu = 0;
    c.verified = verify_identity(c);
    return c;
  }
  int d0 = std::max(1, dg);
  Spec ws = spec_concat(V.spec, make_spec({VarGroup{"w_rab", 1, GroupKind::affine, {}}}));
  std::vector<MPoly> wg;
  for (const auto& p : V.gens) wg.push_back(respec(p, ws));
  Ideal W(ws, wg);
  MPoly w = MPoly::variable(ws, "w_rab");
  std::vector<MPoly> sys{MPoly::constant(ws, 1) - mp_pow(w, d0) * respec(g, ws)};
  for (const auto& f : fs) sys.push_back(respec(f, ws));
  BezoutCertificate cw = certify(W, sys, opts);

  // Keep the part of each cofactor in k[t, x, w^{d0}] and set w^{d0} -> y.
  int wv = ws->var_index("w_rab");
  std::vector<std::vector<MPoly>> hat;  // hat[i][k]: coefficient of y^k
  int mu = 0;
  for (size_t i = 1; i < cw.gs.size(); ++i) {
    std::map<int, std::vector<Term>> by;
    for (const auto& [e, c] : cw.gs[i].terms()) {
      if (e[wv] % d0 != 0) continue;
      by[e[wv] / d0].push_back({Exponent(e.begin(), e.begin() + V.spec->nvars()), c});
    }
    int top = by.empty() ? 0 : by.rbegin()->first;
    mu = std::max(mu, top);
    std::vector<MPoly> parts(top + 1, MPoly(V.spec));
    for (auto& [k, t] : by) parts[k] = MPoly::from_terms(V.spec, std::move(t), CoeffDomain::Integer);
    hat.push_back(std::move(parts));
  }
  auto assemble = [&](int m) {
    BezoutCertificate c = cw;
    c.V = V;
    c.fs = fs;
    c.alpha = respec(cw.alpha, V.spec);
    c.g = g;
    c.mu = m;
    c.gs.clear();
    for (const auto& parts : hat) {
      MPoly gi(V.spec);
      for (size_t k = 0; k < parts.size(); ++k)
        if (!parts[k].is_zero()) gi += parts[k] * mp_pow(g, m - static_cast<int>(k));
      c.gs.push_back(gi);
    }
    c.verified = verify_identity(c);
    return c;
  };
  BezoutCertificate best = assemble(mu);
  if (!best.verified) throw VerificationFailed("strong identity does not hold on V");
  // Lower mu while every cofactor stays divisible by g.
  while (best.mu > 0) {
    BezoutCertificate next = best;
    bool ok = true;
    for (auto& gi : next.gs) {
      auto q = try_divide(gi, g);
      if (!q || !q->has_integer_coeffs()) {
        ok = false;
        break;
      }
      gi = *q;
    }
    if (!ok) break;
    next.mu -= 1;
    next.verified = verify_identity(next);
    if (!next.verified) break;
    best = std::move(next);
  }
  return best;
}

CertificateMeasures measure(const BezoutCertificate& c) {
  if (!c.verified) throw Error("measure needs a verified certificate");
  const Spec& s = c.V.spec;
  auto xg = s->groups_of_kind(GroupKind::affine);
  auto tg = s->groups_of_kind(GroupKind::parameter);
  CertificateMeasures m;
  for (int g : tg) m.deg_t_alpha.push_back(partial_degree(c.alpha, g).value_or(0));
  m.deg_t_alpha_all = tg.empty() ? 0 : degree_in_groups(c.alpha, tg);
  m.h_alpha = height_inf(c.alpha.as_integer());
  for (size_t i = 0; i < c.gs.size(); ++i) {
    MPoly gf = c.gs[i] * c.fs[i];
    m.deg_x_gf.push_back(gf.is_zero() ? -1 : degree_in_groups(gf, xg));
    std::vector<long> per;
    for (int g : tg) per.push_back(partial_degree(gf, g).value_or(-1));
    m.deg_t_gf.push_back(per);
    m.deg_t_gf_all.push_back(gf.is_zero() ? -1 : (tg.empty() ? 0 : degree_in_groups(gf, tg)));
    m.h_g_plus_h_f.push_back(height_inf(c.gs[i].as_integer()) + height_inf(c.fs[i].as_integer()));
  }
  return m;
}

}  // namespace mh
