#include "multiheight/resultants.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "multiheight/hilbert.hpp"

namespace mh {

std::vector<int> ZeroCycle::dims() const {
  if (points.empty()) throw Error("empty 0-cycle");
  std::vector<int> d;
  for (const auto& g : points[0].coords) d.push_back(static_cast<int>(g.size()) - 1);
  return d;
}

long ZeroCycle::degree() const {
  long s = 0;
  for (const auto& p : points) s += p.mult;
  return s;
}

ZeroCycle cycle_product(const ZeroCycle& a, const ZeroCycle& b) {
  ZeroCycle out;
  for (const auto& p : a.points)
    for (const auto& q : b.points) {
      CyclePoint r;
      r.coords = p.coords;
      r.coords.insert(r.coords.end(), q.coords.begin(), q.coords.end());
      r.mult = p.mult * q.mult;
      out.points.push_back(std::move(r));
    }
  return out;
}

std::vector<std::vector<int>> general_form_monomials(const std::vector<int>& dims, const std::vector<int>& d0) {
  if (dims.size() != d0.size()) throw Error("multidegree has the wrong length");
  std::vector<std::vector<int>> out{{}};
  for (size_t i = 0; i < dims.size(); ++i) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int k, int left) {
      if (k == dims[i]) {
        cur.push_back(left);
        comps.push_back(cur);
        cur.pop_back();
        return;
      }
      for (int a = left; a >= 0; --a) {
        cur.push_back(a);
        rec(k + 1, left - a);
        cur.pop_back();
      }
    };
    rec(0, d0[i]);
    std::vector<std::vector<int>> next;
    for (const auto& e : out)
      for (const auto& c : comps) {
        auto x = e;
        x.insert(x.end(), c.begin(), c.end());
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

MPoly general_form_at(const Spec& uspec, int uoffset, const std::vector<std::vector<int>>& monos,
                      const std::vector<mpq_class>& flat_coords) {
  MPoly f(uspec, CoeffDomain::Rational);
  for (size_t k = 0; k < monos.size(); ++k) {
    mpq_class c = 1;
    for (size_t v = 0; v < flat_coords.size(); ++v)
      for (int e = 0; e < monos[k][v]; ++e) c *= flat_coords[v];
    if (c != 0) f += MPoly::variable(uspec, uoffset + static_cast<int>(k)) * c;
  }
  return f;
}

MPoly poisson_resultant(const ZeroCycle& X, const std::vector<int>& d0, const std::string& ugroup) {
  auto dims = X.dims();
  auto monos = general_form_monomials(dims, d0);
  VarGroup g{ugroup, static_cast<int>(monos.size()), GroupKind::parameter, {}};
  for (size_t k = 0; k < monos.size(); ++k) g.vars.push_back(ugroup + "_" + std::to_string(k));
  Spec us = make_spec({g});
  MPoly res = MPoly::constant(us, 1);
  for (const auto& p : X.points) {
    if (p.mult < 1) throw Error("multiplicities must be positive");
    if (p.coords.size() != dims.size()) throw Error("points of a 0-cycle live in different spaces");
    std::vector<mpq_class> flat;
    for (size_t i = 0; i < p.coords.size(); ++i) {
      if (static_cast<int>(p.coords[i].size()) != dims[i] + 1) throw Error("coordinate group has the wrong size");
      bool nz = false;
      for (const auto& x : p.coords[i]) {
        if (x != 0) nz = true;
        flat.push_back(x);
      }
      if (!nz) throw Error("point has an all-zero coordinate group");
    }
    MPoly F = general_form_at(us, 0, monos, flat);
    res = res * mp_pow(F, p.mult);
  }
  return primitive_part(res);
}

mpq_class det_rational(std::vector<std::vector<mpq_class>> m) {
  size_t n = m.size();
  mpq_class det = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      mpq_class f = m[i][k] / m[k][k];
      for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

MPoly det_bareiss(std::vector<std::vector<MPoly>> m, const Spec& spec) {
  size_t n = m.size();
  if (n == 0) return MPoly::constant(spec, 1);
  bool neg = false;
  MPoly prev = MPoly::constant(spec, 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t p = k;
    // Prefer the sparsest nonzero pivot to limit growth.
    for (size_t i = k; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      if (m[p][k].is_zero() || m[i][k].size() < m[p][k].size()) p = i;
    }
    if (m[p][k].is_zero()) return MPoly(spec);
    if (p != k) {
      std::swap(m[p], m[k]);
      neg = !neg;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        MPoly v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = divexact(v, prev);
      }
      m[i][k] = MPoly(spec);
    }
    prev = m[k][k];
  }
  MPoly d = m[n - 1][n - 1];
  return neg ? -d : d;
}

namespace {

// Coefficient of x^a in f, as a polynomial in the remaining variables.
struct CoeffTable {
  std::map<Exponent, MPoly> by_mono;
};

CoeffTable split_coeffs(const MPoly& f, const std::vector<int>& xvars, const Spec& cspec) {
  CoeffTable t;
  int nv = f.spec()->nvars();
  std::map<Exponent, std::vector<Term>> parts;
  std::vector<bool> isx(nv, false);
  for (int v : xvars) isx[v] = true;
  for (const auto& [e, c] : f.terms()) {
    Exponent xe;
    for (int v : xvars) xe.push_back(e[v]);
    Exponent ce(cspec->nvars(), 0);
    for (int v = 0; v < nv; ++v)
      if (!isx[v] && e[v] != 0) ce[cspec->var_index(f.spec()->var_name(v))] = e[v];
    parts[xe].emplace_back(std::move(ce), c);
  }
  for (auto& [xe, ts] : parts) t.by_mono.emplace(xe, MPoly::from_terms(cspec, std::move(ts)));
  return t;
}

}  // namespace

MPoly macaulay_resultant(const std::vector<MPoly>& fs, const MacaulayOptions& opts) {
  if (fs.empty()) throw Error("macaulay_resultant needs forms");
  const Spec& s = fs[0].spec();
  auto pg = s->groups_of_kind(GroupKind::projective);
  if (pg.size() != 1) throw Error("macaulay_resultant needs exactly one projective group");
  auto xvars = s->vars_of_group(pg[0]);
  int np1 = static_cast<int>(xvars.size());
  if (static_cast<int>(fs.size()) != np1) throw Error("macaulay_resultant needs n+1 forms in P^n");
  Spec cs = spec_without(s, {s->group(pg[0]).name});
  std::vector<int> d(np1);
  std::vector<CoeffTable> tabs;
  bool generic = false;
  for (int i = 0; i < np1; ++i) {
    if (!same_spec(fs[i].spec(), s)) throw SpecMismatch("forms have different specs");
    auto md = partial_degree(fs[i], static_cast<int>(pg[0]));
    if (!md || fs[i].is_zero()) return MPoly(cs);
    d[i] = *md;
    if (d[i] < 1) throw Error("macaulay_resultant needs forms of positive degree");
    for (const auto& [e, c] : fs[i].terms()) {
      int deg = 0;
      for (int v : xvars) deg += e[v];
      if (deg != d[i]) throw Error("form is not homogeneous in x");
    }
    tabs.push_back(split_coeffs(fs[i], xvars, cs));
    for (const auto& [xe, c] : tabs.back().by_mono)
      if (!c.is_constant()) generic = true;
  }
  int D = 1;
  for (int x : d) D += x - 1;
  auto monos = general_form_monomials({np1 - 1}, {D});
  std::map<Exponent, int> col;
  for (size_t k = 0; k < monos.size(); ++k) col.emplace(Exponent(monos[k].begin(), monos[k].end()), static_cast<int>(k));
  std::vector<bool> reduced(monos.size());
  for (size_t k = 0; k < monos.size(); ++k) {
    int cnt = 0;
    for (int i = 0; i < np1; ++i)
      if (monos[k][i] >= d[i]) ++cnt;
    reduced[k] = cnt == 1;
  }
  std::vector<int> perm(np1);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(opts.seed);
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    if (attempt > 0) std::shuffle(perm.begin(), perm.end(), rng);
    size_t N = monos.size();
    std::vector<std::vector<MPoly>> M(N, std::vector<MPoly>(N, MPoly(cs)));
    for (size_t k = 0; k < N; ++k) {
      int i = -1;
      for (int p : perm)
        if (monos[k][p] >= d[p]) {
          i = p;
          break;
        }
      std::vector<int> shift = monos[k];
      shift[i] -= d[i];
      for (const auto& [xe, c] : tabs[i].by_mono) {
        Exponent t(np1);
        for (int v = 0; v < np1; ++v) t[v] = xe[v] + shift[v];
        M[k][col.at(t)] = c;
      }
    }
    std::vector<size_t> keep;
    for (size_t k = 0; k < N; ++k)
      if (!reduced[k]) keep.push_back(k);
    if (!generic) {
      std::vector<std::vector<mpq_class>> A(N, std::vector<mpq_class>(N)), B(keep.size(), std::vector<mpq_class>(keep.size()));
      for (size_t a = 0; a < N; ++a)
        for (size_t b = 0; b < N; ++b) A[a][b] = M[a][b].constant_value();
      for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = 0; b < keep.size(); ++b) B[a][b] = A[keep[a]][keep[b]];
      mpq_class den = det_rational(B);
      if (den == 0) continue;
      return MPoly::constant(cs, det_rational(A) / den);
    }
    std::vector<std::vector<MPoly>> Mp(keep.size(), std::vector<MPoly>(keep.size()));
    for (size_t a = 0; a < keep.size(); ++a)
      for (size_t b = 0; b < keep.size(); ++b) Mp[a][b] = M[keep[a]][keep[b]];
    MPoly den = det_bareiss(Mp, cs);
    if (den.is_zero()) continue;
    MPoly num = det_bareiss(M, cs);
    return divexact(num, den);
  }
  if (generic) throw MacaulaySingular("Macaulay denominator singular for every tried variable ordering");
  // Numeric input with a vanishing extraneous minor: resultant of
  // f_i + s x_i^{d_i} as a polynomial in s, evaluated at s = 0.
  Spec ps = spec_concat(make_spec({VarGroup{"gcp_s", 1, GroupKind::parameter, {}}}), s);
  MPoly sv = MPoly::variable(ps, 0);
  std::vector<MPoly> pert;
  for (int i = 0; i < np1; ++i)
    pert.push_back(respec(fs[i], ps) + sv * mp_pow(MPoly::variable(ps, ps->offset(ps->group_index(s->group(pg[0]).name)) + i), d[i]));
  MPoly rs = macaulay_resultant(pert, opts);
  return respec(coefficient_extract(rs, "gcp_s", {0}), cs);
}

EliminantResult eliminant_with_multiplicity(const Ideal& V, const std::vector<int>& c, int u_offset) {
  auto pg = V.spec->groups_of_kind(GroupKind::projective);
  int m = static_cast<int>(pg.size());
  if (static_cast<int>(c.size()) != m) throw Error("index vector has the wrong length");
  std::vector<int> jk;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < c[i]; ++k) jk.push_back(i);
  int R = static_cast<int>(jk.size());
  if (R == 0) throw Error("index must contain at least one linear form");
  HilbertData hd = hilbert_fit(V);
  if (hd.r + 1 != R) throw Error("index length " + std::to_string(R) + " does not match dimension " + std::to_string(hd.r) + " + 1");

  std::vector<VarGroup> ug;
  for (int k = 0; k < R; ++k) {
    std::string name = "u" + std::to_string(u_offset + k);
    VarGroup g{name, V.spec->group(pg[jk[k]]).size, GroupKind::parameter, {}};
    for (int j = 0; j < g.size; ++j) g.vars.push_back(name + "_" + std::to_string(j));
    ug.push_back(std::move(g));
  }
  Spec full = spec_concat(spec_concat(make_spec(ug), V.spec), make_spec({VarGroup{"w_sat", 1, GroupKind::auxiliary, {}}}));
  std::vector<MPoly> gens;
  for (const auto& f : V.gens)
    if (!f.is_zero()) gens.push_back(respec(f, full));
  for (int k = 0; k < R; ++k) {
    int uoff = full->offset(k);
    auto xv = full->vars_of_group(full->group_index(V.spec->group(pg[jk[k]]).name));
    MPoly L(full);
    for (size_t j = 0; j < xv.size(); ++j) L += MPoly::variable(full, uoff + static_cast<int>(j)) * MPoly::variable(full, xv[j]);
    gens.push_back(L);
  }
  static const int kWeights[] = {1, 3, 7, 13, 19, 29, 37, 43};
  MPoly prod = MPoly::constant(full, 1);
  std::vector<std::string> drop;
  for (int i = 0; i < m; ++i) {
    const auto& name = V.spec->group(pg[i]).name;
    drop.push_back(name);
    auto xv = full->vars_of_group(full->group_index(name));
    MPoly ell(full);
    for (size_t j = 0; j < xv.size(); ++j) ell += MPoly::variable(full, xv[j]) * mpq_class(kWeights[j % 8]);
    prod = prod * ell;
  }
  gens.push_back(MPoly::variable(full, "w_sat") * prod - MPoly::constant(full, 1));
  drop.push_back("w_sat");
  Ideal E = eliminate(Ideal(full, gens), drop);
  std::vector<MPoly> nz;
  for (const auto& g : E.gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.size() != 1 || nz[0].is_constant())
    throw NonPrincipalElimination("eliminant ideal is not principal (" + std::to_string(nz.size()) + " generators)");
  EliminantResult out;
  out.elim = primitive_part(nz[0]);
  int nu = 0;
  for (int k = 0; k < R; ++k) {
    std::vector<int> b = c;
    b[jk[k]] -= 1;
    mpz_class pred = hd.degree(b);
    mpz_class act = partial_degree(out.elim, k).value_or(0);
    out.predicted.push_back(pred);
    out.actual.push_back(act);
    if (pred == 0 && act == 0) continue;
    if (act == 0 || pred % act != 0)
      throw MultiplicityMismatch("predicted degree " + pred.get_str() + " is not a multiple of " + act.get_str());
    int q = static_cast<int>(mpz_class(pred / act).get_si());
    if (nu != 0 && q != nu) throw MultiplicityMismatch("multiplicity differs across linear forms");
    nu = q;
  }
  if (nu == 0) throw MultiplicityMismatch("no linear form has positive degree");
  out.nu = nu;
  out.res = mp_pow(out.elim, nu);
  return out;
}

namespace {

bool equal_up_to_scalar(const MPoly& a, const MPoly& b) {
  MPoly pa = primitive_part(a), pb = primitive_part(respec(b, a.spec()));
  return pa == pb;
}

int cycle_dimension(const Ideal& V) { return hilbert_fit(V).r; }

MPoly res_or_one(const Ideal& V, const std::vector<int>& c, int off, const Spec& fallback) {
  try {
    return eliminant_with_multiplicity(V, c, off).res;
  } catch (const NonPrincipalElimination&) {
    return MPoly::constant(fallback, 1);
  }
}

}  // namespace

bool product_resultant_check(const ZeroCycle& X1, const ZeroCycle& X2, const std::vector<int>& c1,
                             const std::vector<int>& c2) {
  auto n1 = X1.dims(), n2 = X2.dims();
  if (c1.size() != n1.size() || c2.size() != n2.size()) throw Error("index vectors have the wrong length");
  int s1 = std::accumulate(c1.begin(), c1.end(), 0), s2 = std::accumulate(c2.begin(), c2.end(), 0);
  if (s1 + s2 != 1) throw Error("0-cycles need |c1| + |c2| = 1");
  std::vector<int> c = c1;
  c.insert(c.end(), c2.begin(), c2.end());
  ZeroCycle P = cycle_product(X1, X2);
  MPoly lhs = poisson_resultant(P, c);
  MPoly rhs = s1 == 1 ? mp_pow(poisson_resultant(X1, c1), static_cast<int>(X2.degree()))
                      : mp_pow(poisson_resultant(X2, c2), static_cast<int>(X1.degree()));
  // Only the monomials of the relevant factor carry weight; match by name.
  return equal_up_to_scalar(lhs, rhs);
}

bool product_resultant_check(const Ideal& V1, const Ideal& V2, const std::vector<int>& c1,
                             const std::vector<int>& c2) {
  Spec ps = spec_concat(V1.spec, V2.spec);
  std::vector<MPoly> gens;
  for (const auto& f : V1.gens) gens.push_back(respec(f, ps));
  for (const auto& f : V2.gens) gens.push_back(respec(f, ps));
  Ideal P(ps, gens);
  int r1 = cycle_dimension(V1), r2 = cycle_dimension(V2);
  int s1 = std::accumulate(c1.begin(), c1.end(), 0), s2 = std::accumulate(c2.begin(), c2.end(), 0);
  if (s1 + s2 != r1 + r2 + 1) throw Error("index length does not match the product dimension");
  std::vector<int> c = c1;
  c.insert(c.end(), c2.begin(), c2.end());
  Spec one = make_spec({VarGroup{"_const", 1, GroupKind::auxiliary, {}}});
  MPoly lhs = res_or_one(P, c, 0, one);
  MPoly rhs;
  if (s1 == r1 + 1 && s2 == r2) {
    mpz_class e = hilbert_fit(V2).degree(c2);
    rhs = mp_pow(eliminant_with_multiplicity(V1, c1, 0).res, static_cast<int>(e.get_si()));
  } else if (s1 == r1 && s2 == r2 + 1) {
    mpz_class e = hilbert_fit(V1).degree(c1);
    rhs = mp_pow(eliminant_with_multiplicity(V2, c2, s1).res, static_cast<int>(e.get_si()));
  } else {
    return lhs.is_constant();
  }
  if (lhs.is_constant() || rhs.is_constant()) return lhs.is_constant() && rhs.is_constant();
  return equal_up_to_scalar(lhs, rhs);
}

}  // namespace mh
