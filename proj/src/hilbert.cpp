#include "multiheight/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace mh {

namespace {

struct Grading {
  std::vector<int> groups;                // projective group indices
  std::vector<std::vector<int>> vars;     // variables per group
  std::vector<int> dims;
};

Grading grading_of(const Spec& s) {
  Grading g;
  g.groups = s->groups_of_kind(GroupKind::projective);
  if (g.groups.empty()) throw Error("Hilbert functions need at least one projective group");
  int covered = 0;
  for (int gi : g.groups) {
    g.vars.push_back(s->vars_of_group(gi));
    g.dims.push_back(s->group(gi).size - 1);
    covered += s->group(gi).size;
  }
  if (covered != s->nvars()) throw Error("Hilbert functions need an ideal in projective variables only");
  return g;
}

void check_multihomogeneous(const Ideal& I) {
  for (const auto& f : I.gens)
    if (!f.is_zero() && !is_multihomogeneous(f)) throw Error("generator is not multihomogeneous: " + f.to_string());
}

// Exponents of size k with total d, in a fixed order.
void compositions(int k, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = d; a >= 0; --a) {
    cur.push_back(a);
    compositions(k, d - a, cur, out);
    cur.pop_back();
  }
}

std::vector<Exponent> monomials_of_degree(const Grading& g, int nvars, const std::vector<int>& delta) {
  std::vector<Exponent> out{Exponent(nvars, 0)};
  for (size_t i = 0; i < g.groups.size(); ++i) {
    if (delta[i] < 0) return {};
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(static_cast<int>(g.vars[i].size()), delta[i], cur, comps);
    std::vector<Exponent> next;
    next.reserve(out.size() * comps.size());
    for (const auto& e : out)
      for (const auto& c : comps) {
        Exponent x = e;
        for (size_t j = 0; j < c.size(); ++j) x[g.vars[i][j]] = c[j];
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

using SRow = std::vector<std::pair<int, mpz_class>>;

void make_primitive(SRow& r) {
  mpz_class g = 0;
  for (const auto& [c, v] : r) g = gcd(g, v);
  if (g > 1)
    for (auto& [c, v] : r) v /= g;
}

// Fraction-free incremental echelon form; returns the rank.
class Echelon {
 public:
  bool insert(SRow row) {
    while (!row.empty()) {
      auto it = pivots_.find(row.front().first);
      if (it == pivots_.end()) {
        make_primitive(row);
        pivots_.emplace(row.front().first, std::move(row));
        return true;
      }
      const SRow& p = it->second;
      mpz_class a = p.front().second, b = row.front().second;
      mpz_class g = gcd(a, b);
      a /= g;
      b /= g;
      SRow out;
      size_t i = 0, j = 0;
      while (i < row.size() || j < p.size()) {
        if (j >= p.size() || (i < row.size() && row[i].first < p[j].first)) {
          out.emplace_back(row[i].first, a * row[i].second);
          ++i;
        } else if (i >= row.size() || p[j].first < row[i].first) {
          out.emplace_back(p[j].first, -b * p[j].second);
          ++j;
        } else {
          mpz_class v = a * row[i].second - b * p[j].second;
          if (v != 0) out.emplace_back(row[i].first, std::move(v));
          ++i;
          ++j;
        }
      }
      make_primitive(out);
      row = std::move(out);
    }
    return false;
  }
  size_t rank() const { return pivots_.size(); }

 private:
  std::map<int, SRow> pivots_;
};

bool divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Monomial-basis coefficients of the polynomial through (xs, ys).
std::vector<mpq_class> interp1d(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& ys) {
  size_t n = xs.size();
  std::vector<mpq_class> dd = ys;
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  std::vector<mpq_class> c(n, 0);
  // Horner on the Newton form.
  for (size_t k = n; k-- > 0;) {
    std::vector<mpq_class> next(n, 0);
    for (size_t i = 0; i + 1 < n; ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * xs[k];
    }
    next[0] += dd[k];
    c = std::move(next);
  }
  return c;
}

mpz_class factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

mpq_class HilbertData::eval(const std::vector<int>& delta) const {
  mpq_class s = 0;
  for (const auto& [a, c] : poly) {
    mpq_class t = c;
    for (size_t i = 0; i < a.size(); ++i) {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), mpz_class(delta[i]).get_mpz_t(), a[i]);
      t *= p;
    }
    s += t;
  }
  return s;
}

mpz_class HilbertData::degree(const std::vector<int>& b) const {
  auto it = mixed_degrees.find(b);
  return it == mixed_degrees.end() ? mpz_class(0) : it->second;
}

mpz_class graded_dim(const Ideal& I, const std::vector<int>& delta) {
  Grading g = grading_of(I.spec);
  check_multihomogeneous(I);
  if (delta.size() != g.groups.size()) throw Error("degree vector has the wrong length");
  int nv = I.spec->nvars();
  auto monos = monomials_of_degree(g, nv, delta);
  if (monos.empty()) return 0;
  std::map<Exponent, int> col;
  for (size_t i = 0; i < monos.size(); ++i) col.emplace(monos[i], static_cast<int>(i));
  Echelon ech;
  for (const auto& f0 : I.gens) {
    if (f0.is_zero()) continue;
    MPoly f = primitive_part(f0);
    auto md = is_multihomogeneous(f);
    std::vector<int> rest(delta.size());
    bool fits = true;
    for (size_t i = 0; i < delta.size(); ++i) {
      rest[i] = delta[i] - md->d[i];
      if (rest[i] < 0) fits = false;
    }
    if (!fits) continue;
    for (const auto& m : monomials_of_degree(g, nv, rest)) {
      SRow row;
      for (const auto& [e, c] : f.terms()) {
        Exponent x = e;
        for (int v = 0; v < nv; ++v) x[v] += m[v];
        row.emplace_back(col.at(x), c.get_num());
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.insert(std::move(row));
      if (ech.rank() == monos.size()) return 0;
    }
  }
  return mpz_class(static_cast<unsigned long>(monos.size() - ech.rank()));
}

mpz_class graded_dim_standard(const GroebnerBasis& G, const std::vector<int>& delta) {
  Grading g = grading_of(G.spec());
  if (G.is_unit()) return 0;
  const auto& leads = G.leading_exponents();
  mpz_class count = 0;
  for (const auto& m : monomials_of_degree(g, G.spec()->nvars(), delta)) {
    bool standard = true;
    for (const auto& l : leads)
      if (divides(l, m)) {
        standard = false;
        break;
      }
    if (standard) ++count;
  }
  return count;
}

HilbertData hilbert_fit(const Ideal& I, const HilbertOptions& opts) {
  Grading g = grading_of(I.spec);
  check_multihomogeneous(I);
  HilbertData data;
  data.ideal = I;
  data.dims = g.dims;
  int m = static_cast<int>(g.dims.size());
  int sum_n = std::accumulate(g.dims.begin(), g.dims.end(), 0);
  int cap = opts.cap >= 0 ? opts.cap : 2 * sum_n + 8;

  std::optional<GroebnerBasis> G;
  if (opts.method == HilbertMethod::standard_monomials) {
    std::vector<MPoly> nz;
    for (const auto& f : I.gens)
      if (!f.is_zero()) nz.push_back(f);
    G = groebner(Ideal(I.spec, nz), MonomialOrder::graded_lex());
  }
  auto value = [&](const std::vector<int>& d) -> const mpz_class& {
    auto it = data.values.find(d);
    if (it != data.values.end()) return it->second;
    mpz_class v = G ? graded_dim_standard(*G, d) : graded_dim(I, d);
    return data.values.emplace(d, v).first->second;
  };

  for (int s = 0;; ++s) {
    for (int i = 0; i < m; ++i)
      if (s + g.dims[i] + 2 > cap)
        throw HilbertStabilizationError("Hilbert polynomial did not stabilize within degree " + std::to_string(cap));
    // Fit on s + [0..n_i].
    std::vector<int> fit_sz(m), chk_sz(m);
    size_t nfit = 1, nchk = 1;
    for (int i = 0; i < m; ++i) {
      fit_sz[i] = g.dims[i] + 1;
      chk_sz[i] = g.dims[i] + 3;
      nfit *= fit_sz[i];
      nchk *= chk_sz[i];
    }
    auto unflat = [&](size_t idx, const std::vector<int>& sz) {
      std::vector<int> k(m);
      for (int i = m - 1; i >= 0; --i) {
        k[i] = static_cast<int>(idx % sz[i]);
        idx /= sz[i];
      }
      return k;
    };
    std::vector<mpq_class> coef(nfit);
    for (size_t idx = 0; idx < nfit; ++idx) {
      auto k = unflat(idx, fit_sz);
      std::vector<int> d(m);
      for (int i = 0; i < m; ++i) d[i] = s + k[i];
      coef[idx] = value(d);
    }
    // Tensor interpolation, one axis at a time; after axis i the entries
    // along that axis hold monomial coefficients.
    for (int ax = 0; ax < m; ++ax) {
      size_t stride = 1;
      for (int i = ax + 1; i < m; ++i) stride *= fit_sz[i];
      size_t len = fit_sz[ax];
      std::vector<mpq_class> xs(len);
      for (size_t j = 0; j < len; ++j) xs[j] = s + static_cast<int>(j);
      for (size_t base = 0; base < nfit; ++base) {
        if ((base / stride) % len != 0) continue;
        std::vector<mpq_class> ys(len);
        for (size_t j = 0; j < len; ++j) ys[j] = coef[base + j * stride];
        auto c = interp1d(xs, ys);
        for (size_t j = 0; j < len; ++j) coef[base + j * stride] = c[j];
      }
    }
    data.poly.clear();
    for (size_t idx = 0; idx < nfit; ++idx)
      if (coef[idx] != 0) data.poly.emplace(unflat(idx, fit_sz), coef[idx]);
    bool ok = true;
    for (size_t idx = 0; idx < nchk && ok; ++idx) {
      auto k = unflat(idx, chk_sz);
      bool inside = true;
      for (int i = 0; i < m; ++i)
        if (k[i] > g.dims[i]) inside = false;
      if (inside) continue;
      std::vector<int> d(m);
      for (int i = 0; i < m; ++i) d[i] = s + k[i];
      if (data.eval(d) != value(d)) ok = false;
    }
    if (!ok) continue;
    data.stabilized_from.assign(m, s);
    break;
  }
  data.r = -1;
  for (const auto& [a, c] : data.poly) data.r = std::max(data.r, std::accumulate(a.begin(), a.end(), 0));
  if (data.r >= 0) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == m - 1) {
        if (left > g.dims[i]) return;
        cur.push_back(left);
        mpz_class fact = 1;
        for (int x : cur) fact *= factorial(x);
        auto it = data.poly.find(cur);
        mpq_class v = it == data.poly.end() ? mpq_class(0) : it->second * fact;
        if (v.get_den() != 1 || v < 0) throw Error("non-integral or negative mixed degree");
        data.mixed_degrees.emplace(cur, v.get_num());
        cur.pop_back();
        return;
      }
      for (int a = 0; a <= std::min(left, g.dims[i]); ++a) {
        cur.push_back(a);
        rec(i + 1, left - a);
        cur.pop_back();
      }
    };
    rec(0, data.r);
    for (const auto& [a, c] : data.poly) {
      for (int i = 0; i < m; ++i)
        if (a[i] > g.dims[i] && c != 0) throw Error("Hilbert polynomial has degree above n_i in a group");
    }
  }
  return data;
}

std::map<std::vector<int>, mpz_class> mixed_degrees(const Ideal& I, const HilbertOptions& opts) {
  return hilbert_fit(I, opts).mixed_degrees;
}

Ideal standard_model(const Ideal& I, const std::string& tgroup) {
  const Spec& s = I.spec;
  int tg = s->group_index(tgroup);
  if (s->group(tg).kind != GroupKind::parameter || s->group(tg).size != 1)
    throw Error("standard_model needs a parameter group of size one");
  std::vector<std::string> xgroups;
  for (int g = 0; g < s->ngroups(); ++g) {
    if (g == tg) continue;
    if (s->group(g).kind != GroupKind::projective) throw Error("standard_model: unexpected group " + s->group(g).name);
    xgroups.push_back(s->group(g).name);
  }
  int tv = s->offset(tg);
  std::vector<MPoly> gens;
  for (const auto& f : I.gens)
    if (!f.is_zero()) gens.push_back(f);

  // Contract I k(t)[x] back to k[t][x] by saturating at the leading
  // coefficients of a basis with x ranked above t.
  GroebnerBasis G1 = groebner(Ideal(s, gens), MonomialOrder::block(s, {xgroups}));
  if (G1.is_unit()) throw Error("standard_model: the ideal is the unit ideal");
  MPoly h = MPoly::constant(s, 1);
  for (size_t i = 0; i < G1.basis().size(); ++i) {
    const auto& b = G1.basis()[i];
    Exponent lx = G1.leading_exponents()[i];
    lx[tv] = 0;
    std::vector<Term> lc;
    for (const auto& [e, c] : b.terms()) {
      Exponent x = e;
      x[tv] = 0;
      if (x == lx) {
        Exponent te(s->nvars(), 0);
        te[tv] = e[tv];
        lc.emplace_back(std::move(te), c);
      }
    }
    MPoly l = primitive_part(MPoly::from_terms(s, std::move(lc)));
    if (l.is_constant()) continue;
    if (try_divide(h, l)) continue;
    h = h * divexact(l, mp_gcd(h, l));
  }
  std::vector<MPoly> sat = G1.basis();
  if (!h.is_constant()) {
    Spec ws = spec_concat(s, make_spec({VarGroup{"w_sat", 1, GroupKind::auxiliary, {}}}));
    std::vector<MPoly> g2;
    for (const auto& b : sat) g2.push_back(respec(b, ws));
    g2.push_back(MPoly::variable(ws, "w_sat") * respec(h, ws) - MPoly::constant(ws, 1));
    sat = eliminate(Ideal(ws, g2), {"w_sat"}).gens;
    for (auto& b : sat) b = respec(b, s);
  }
  GroebnerBasis G2 = groebner(Ideal(s, sat), MonomialOrder::block(s, {{tgroup}}));

  std::string sname = "s";
  while (s->find_group(sname)) sname += "_";
  std::vector<VarGroup> mg{VarGroup{sname, 2, GroupKind::projective, {}}};
  for (const auto& x : xgroups) mg.push_back(s->group(s->group_index(x)));
  Spec ms = make_spec(mg);
  int s0 = 0, s1 = 1;
  std::vector<MPoly> out;
  for (const auto& b : G2.basis()) {
    int D = b.degree_in_var(tv);
    std::vector<Term> ts;
    for (const auto& [e, c] : b.terms()) {
      Exponent x(ms->nvars(), 0);
      x[s0] = D - e[tv];
      x[s1] = e[tv];
      for (int v = 0; v < s->nvars(); ++v) {
        if (v == tv) continue;
        x[ms->var_index(s->var_name(v))] = e[v];
      }
      ts.emplace_back(std::move(x), c);
    }
    out.push_back(primitive_part(MPoly::from_terms(ms, std::move(ts))));
  }
  return Ideal(ms, out);
}

HeightScalar ff_height(const Ideal& I, const std::string& tgroup) {
  if (I.spec->groups_of_kind(GroupKind::projective).size() != 1)
    throw Error("ff_height is implemented for one projective group");
  Ideal model = standard_model(I, tgroup);
  HilbertData d = hilbert_fit(model);
  if (d.r < 1) throw Error("ff_height: empty variety");
  return HeightScalar::integer(d.degree({0, d.r}));
}

std::map<std::vector<int>, mpz_class> pushforward_mixed_degrees(const Ideal& I, const std::vector<int>& l,
                                                                const HilbertOptions& opts) {
  Grading g = grading_of(I.spec);
  int m = static_cast<int>(g.groups.size());
  if (static_cast<int>(l.size()) != m) throw Error("projection target has the wrong number of groups");
  std::vector<VarGroup> extra;
  std::vector<int> projected;
  for (int i = 0; i < m; ++i) {
    if (l[i] < 0 || l[i] > g.dims[i]) throw Error("projection target larger than the source");
    if (l[i] == g.dims[i]) continue;
    projected.push_back(i);
    VarGroup y{I.spec->group(g.groups[i]).name + "_img", l[i] + 1, GroupKind::projective, {}};
    for (int j = 0; j <= l[i]; ++j) y.vars.push_back(y.name + "_" + std::to_string(j));
    extra.push_back(std::move(y));
  }
  if (projected.empty()) return hilbert_fit(I, opts).mixed_degrees;
  extra.push_back(VarGroup{"w_sat", 1, GroupKind::auxiliary, {}});
  Spec full = spec_concat(I.spec, make_spec(extra));
  std::vector<MPoly> gens;
  for (const auto& f : I.gens)
    if (!f.is_zero()) gens.push_back(respec(f, full));
  MPoly prod = MPoly::constant(full, 1);
  static const int kPrimes[] = {1, 3, 7, 13, 19, 29, 37, 43, 53, 61, 71, 79};
  for (int i : projected) {
    int yoff = full->offset(full->group_index(I.spec->group(g.groups[i]).name + "_img"));
    auto& xv = g.vars[i];
    for (int a = 0; a <= l[i]; ++a)
      for (int b = a + 1; b <= l[i]; ++b)
        gens.push_back(MPoly::variable(full, xv[a]) * MPoly::variable(full, yoff + b) -
                       MPoly::variable(full, xv[b]) * MPoly::variable(full, yoff + a));
    MPoly ell(full);
    for (int a = 0; a <= l[i]; ++a) ell += MPoly::variable(full, xv[a]) * mpq_class(kPrimes[a % 12]);
    prod = prod * ell;
  }
  gens.push_back(MPoly::variable(full, "w_sat") * prod - MPoly::constant(full, 1));
  Ideal W = eliminate(Ideal(full, gens), {"w_sat"});
  HilbertData d = hilbert_fit(W, opts);
  // Groups of W: original projective groups, then images of the projected ones.
  std::map<std::vector<int>, mpz_class> out;
  for (const auto& [b, v] : d.mixed_degrees) {
    bool zero_on_source = true;
    for (int i : projected)
      if (b[i] != 0) zero_on_source = false;
    if (!zero_on_source) continue;
    std::vector<int> target(m);
    for (int i = 0; i < m; ++i) target[i] = b[i];
    for (size_t k = 0; k < projected.size(); ++k) target[projected[k]] = b[m + k];
    out[target] += v;
  }
  return out;
}

}  // namespace mh
