// Buchberger's algorithm over Z with fraction-free reduction, sugar pair
// selection and the Gebauer-Moeller criteria.
#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>

#include "multiheight/elim.hpp"

namespace mh {

MonomialOrder MonomialOrder::block(const Spec& spec, const std::vector<std::vector<std::string>>& groups) {
  MonomialOrder o;
  o.kind = Kind::block;
  std::vector<bool> used(spec->nvars(), false);
  for (const auto& blk : groups) {
    std::vector<int> vars;
    for (const auto& g : blk) {
      for (int v : spec->vars_of_group(spec->group_index(g))) {
        if (used[v]) throw Error("group '" + g + "' appears in two blocks");
        used[v] = true;
        vars.push_back(v);
      }
    }
    std::sort(vars.begin(), vars.end());
    if (!vars.empty()) o.blocks.push_back(std::move(vars));
  }
  std::vector<int> rest;
  for (int v = 0; v < spec->nvars(); ++v)
    if (!used[v]) rest.push_back(v);
  if (!rest.empty()) o.blocks.push_back(std::move(rest));
  return o;
}

MonomialOrder MonomialOrder::elimination(const Spec& spec, const std::vector<std::string>& drop) {
  return block(spec, {drop});
}

namespace gb {

constexpr int kMaxSlots = 56;

struct Mon {
  std::array<uint16_t, kMaxSlots> s{};
};

struct Layout {
  int nvars = 0;
  int nslots = 0;
  std::vector<int> var_slot;
  struct Block {
    int deg_slot;  // -1 when the block is pure lex
    std::vector<int> slots;
  };
  std::vector<Block> blocks;

  Layout() = default;
  Layout(const MonomialOrder& o, int n) : nvars(n), var_slot(n, -1) {
    std::vector<std::vector<int>> bl;
    bool with_deg = true;
    if (o.kind == MonomialOrder::Kind::lex) {
      bl.emplace_back(n);
      std::iota(bl[0].begin(), bl[0].end(), 0);
      with_deg = false;
    } else if (o.kind == MonomialOrder::Kind::graded_lex) {
      bl.emplace_back(n);
      std::iota(bl[0].begin(), bl[0].end(), 0);
    } else {
      bl = o.blocks;
    }
    int slot = 0;
    for (const auto& b : bl) {
      Block B;
      B.deg_slot = with_deg ? slot++ : -1;
      for (int v : b) {
        if (v < 0 || v >= n || var_slot[v] >= 0) throw Error("invalid block order");
        var_slot[v] = slot;
        B.slots.push_back(slot++);
      }
      blocks.push_back(std::move(B));
    }
    for (int v = 0; v < n; ++v)
      if (var_slot[v] < 0) throw Error("block order does not cover every variable");
    nslots = slot;
    if (nslots > kMaxSlots) throw Error("too many variables for the Groebner engine");
  }

  Mon encode(const Exponent& e) const {
    Mon m;
    for (int v = 0; v < nvars; ++v) {
      if (e[v] > 60000) throw Error("exponent too large for the Groebner engine");
      m.s[var_slot[v]] = static_cast<uint16_t>(e[v]);
    }
    fix_degrees(m);
    return m;
  }

  Exponent decode(const Mon& m) const {
    Exponent e(nvars);
    for (int v = 0; v < nvars; ++v) e[v] = m.s[var_slot[v]];
    return e;
  }

  void fix_degrees(Mon& m) const {
    for (const auto& b : blocks) {
      if (b.deg_slot < 0) continue;
      unsigned d = 0;
      for (int s : b.slots) d += m.s[s];
      if (d > 60000) throw Error("degree too large for the Groebner engine");
      m.s[b.deg_slot] = static_cast<uint16_t>(d);
    }
  }

  int cmp(const Mon& a, const Mon& b) const {
    for (int i = 0; i < nslots; ++i)
      if (a.s[i] != b.s[i]) return a.s[i] < b.s[i] ? -1 : 1;
    return 0;
  }

  bool divides(const Mon& a, const Mon& b) const {
    for (int i = 0; i < nslots; ++i)
      if (a.s[i] > b.s[i]) return false;
    return true;
  }

  Mon mul(const Mon& a, const Mon& b) const {
    Mon m;
    for (int i = 0; i < nslots; ++i) {
      unsigned x = unsigned(a.s[i]) + b.s[i];
      if (x > 60000) throw Error("degree too large for the Groebner engine");
      m.s[i] = static_cast<uint16_t>(x);
    }
    return m;
  }

  // b / a, assuming a divides b.
  Mon quo(const Mon& b, const Mon& a) const {
    Mon m;
    for (int i = 0; i < nslots; ++i) m.s[i] = static_cast<uint16_t>(b.s[i] - a.s[i]);
    return m;
  }

  Mon lcm(const Mon& a, const Mon& b) const {
    Mon m;
    for (int v = 0; v < nvars; ++v) {
      int s = var_slot[v];
      m.s[s] = std::max(a.s[s], b.s[s]);
    }
    fix_degrees(m);
    return m;
  }

  bool coprime(const Mon& a, const Mon& b) const {
    for (int v = 0; v < nvars; ++v) {
      int s = var_slot[v];
      if (a.s[s] && b.s[s]) return false;
    }
    return true;
  }

  int degree(const Mon& a) const {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += a.s[var_slot[v]];
    return d;
  }

  uint64_t mask(const Mon& a) const {
    uint64_t m = 0;
    for (int v = 0; v < nvars; ++v)
      if (a.s[var_slot[v]]) m |= uint64_t(1) << (v % 64);
    return m;
  }
};

struct GTerm {
  Mon m;
  mpz_class c;
};

using Poly = std::vector<GTerm>;

struct Engine {
  Layout L;
  std::vector<Poly> basis;
  std::vector<uint64_t> masks;

  void sort_poly(Poly& p) const {
    std::sort(p.begin(), p.end(), [&](const GTerm& a, const GTerm& b) { return L.cmp(a.m, b.m) > 0; });
    Poly out;
    for (auto& t : p) {
      if (!out.empty() && L.cmp(out.back().m, t.m) == 0) {
        out.back().c += t.c;
      } else {
        if (!out.empty() && out.back().c == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().c == 0) out.pop_back();
    p = std::move(out);
  }

  // Converts to an integer polynomial; `scale` receives the factor s with
  // f = s * result.
  Poly from_mpoly(const MPoly& f, mpq_class* scale) const {
    mpz_class den = 1;
    for (const auto& t : f.terms()) den = lcm(den, t.second.get_den());
    Poly p;
    p.reserve(f.size());
    for (const auto& [e, c] : f.terms()) {
      mpq_class x = c * den;
      p.push_back({L.encode(e), x.get_num()});
    }
    sort_poly(p);
    if (scale) *scale = mpq_class(1) / den;
    return p;
  }

  MPoly to_mpoly(const Poly& p, const Spec& spec, bool monic) const {
    std::vector<Term> ts;
    ts.reserve(p.size());
    mpq_class lc = p.empty() ? mpq_class(1) : mpq_class(p[0].c);
    for (const auto& t : p) {
      mpq_class c(t.c);
      if (monic) c /= lc;
      ts.emplace_back(L.decode(t.m), c);
    }
    return MPoly::from_terms(spec, std::move(ts), monic ? CoeffDomain::Rational : CoeffDomain::Integer);
  }

  static mpz_class content(const Poly& p) {
    mpz_class g = 0;
    for (const auto& t : p) {
      g = gcd(g, t.c);
      if (g == 1) break;
    }
    return g;
  }

  static void make_primitive(Poly& p) {
    if (p.empty()) return;
    mpz_class g = content(p);
    if (p[0].c < 0) g = -g;
    if (g != 1)
      for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
  }

  // a * p[from..] - b * q * g[1..], both sorted; leading terms already cancel.
  Poly combine(const Poly& p, size_t from, const mpz_class& a, const mpz_class& b, const Mon& q,
               const Poly& g) const {
    Poly out;
    out.reserve(p.size() - from + g.size());
    size_t i = from, j = 1;
    bool a_one = (a == 1);
    while (i < p.size() || j < g.size()) {
      int c;
      Mon gm;
      if (j < g.size()) gm = L.mul(q, g[j].m);
      if (i >= p.size()) {
        c = -1;
      } else if (j >= g.size()) {
        c = 1;
      } else {
        c = L.cmp(p[i].m, gm);
      }
      if (c > 0) {
        out.push_back({p[i].m, a_one ? p[i].c : mpz_class(a * p[i].c)});
        ++i;
      } else if (c < 0) {
        out.push_back({gm, mpz_class(-b * g[j].c)});
        ++j;
      } else {
        mpz_class v = a_one ? mpz_class(p[i].c - b * g[j].c) : mpz_class(a * p[i].c - b * g[j].c);
        if (v != 0) out.push_back({gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  int find_reducer(const std::vector<const Poly*>& G, const std::vector<uint64_t>& gm, const Mon& m) const {
    uint64_t mm = L.mask(m);
    for (size_t k = 0; k < G.size(); ++k) {
      if (gm[k] & ~mm) continue;
      if (L.divides((*G[k])[0].m, m)) return static_cast<int>(k);
    }
    return -1;
  }

  // Full reduction. With `mult` set, tracks M such that result = M * NF.
  Poly reduce(Poly p, const std::vector<const Poly*>& G, const std::vector<uint64_t>& gm,
              mpq_class* mult) const {
    Poly r;
    size_t pos = 0;
    int steps = 0;
    while (pos < p.size()) {
      int k = find_reducer(G, gm, p[pos].m);
      if (k < 0) {
        r.push_back(std::move(p[pos]));
        ++pos;
        continue;
      }
      const Poly& g = *G[k];
      Mon q = L.quo(p[pos].m, g[0].m);
      mpz_class d = gcd(g[0].c, p[pos].c);
      mpz_class a = g[0].c / d, b = p[pos].c / d;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      p = combine(p, pos + 1, a, b, q, g);
      pos = 0;
      if (a != 1) {
        for (auto& t : r) t.c *= a;
        if (mult) *mult *= a;
      }
      if (++steps % 16 == 0) {
        mpz_class c = gcd(content(p), content(r));
        if (c > 1) {
          for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
          for (auto& t : r) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
          if (mult) *mult /= c;
        }
      }
    }
    return r;
  }
};

}  // namespace gb

namespace {

struct Pair {
  int i, j;
  gb::Mon lcm;
  int sugar;
};

}  // namespace

GroebnerBasis groebner(const Ideal& I, const MonomialOrder& order, const GroebnerOptions& opts) {
  auto eng = std::make_shared<gb::Engine>();
  eng->L = gb::Layout(order, I.spec->nvars());
  const gb::Layout& L = eng->L;

  std::vector<gb::Poly> polys;
  std::vector<int> sugar;
  std::vector<bool> active;
  std::vector<uint64_t> masks;
  std::vector<Pair> pairs;
  long long processed = 0;
  bool unit = false;

  auto active_set = [&](std::vector<const gb::Poly*>& G, std::vector<uint64_t>& gm, int skip) {
    G.clear();
    gm.clear();
    for (size_t k = 0; k < polys.size(); ++k)
      if (active[k] && static_cast<int>(k) != skip) {
        G.push_back(&polys[k]);
        gm.push_back(masks[k]);
      }
  };

  auto update = [&](int h) {
    const gb::Mon& lh = polys[h][0].m;
    std::vector<int> C;
    for (size_t g = 0; g < polys.size(); ++g)
      if (active[g] && static_cast<int>(g) != h) C.push_back(static_cast<int>(g));
    std::vector<gb::Mon> lcms(C.size());
    for (size_t k = 0; k < C.size(); ++k) lcms[k] = L.lcm(polys[C[k]][0].m, lh);
    // Chain criterion among new pairs.
    std::vector<bool> keep(C.size(), true);
    for (size_t k = 0; k < C.size(); ++k) {
      if (L.coprime(polys[C[k]][0].m, lh)) continue;
      for (size_t l = 0; l < C.size(); ++l) {
        if (l == k || !keep[l]) continue;
        if (L.divides(lcms[l], lcms[k])) {
          if (L.cmp(lcms[l], lcms[k]) != 0 || l < k) {
            keep[k] = false;
            break;
          }
        }
      }
    }
    // Drop old pairs whose lcm is divisible by lm(h) strictly.
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (auto& p : pairs) {
      if (L.divides(lh, p.lcm)) {
        gb::Mon l1 = L.lcm(polys[p.i][0].m, lh), l2 = L.lcm(polys[p.j][0].m, lh);
        if (L.cmp(l1, p.lcm) != 0 && L.cmp(l2, p.lcm) != 0) continue;
      }
      kept.push_back(p);
    }
    pairs = std::move(kept);
    for (size_t k = 0; k < C.size(); ++k) {
      if (!keep[k]) continue;
      int g = C[k];
      if (L.coprime(polys[g][0].m, lh)) continue;  // product criterion
      int sg = sugar[g] - L.degree(polys[g][0].m);
      int sh = sugar[h] - L.degree(lh);
      int dl = L.degree(lcms[k]);
      pairs.push_back({g, h, lcms[k], std::max(sg, sh) + dl});
    }
    for (size_t g = 0; g < polys.size(); ++g)
      if (active[g] && static_cast<int>(g) != h && L.divides(lh, polys[g][0].m)) active[g] = false;
  };

  auto add_poly = [&](gb::Poly p, int sg) {
    gb::Engine::make_primitive(p);
    bool constant = true;
    for (int v = 0; v < L.nvars && constant; ++v)
      if (p[0].m.s[L.var_slot[v]]) constant = false;
    polys.push_back(std::move(p));
    sugar.push_back(std::max(sg, L.degree(polys.back()[0].m)));
    active.push_back(true);
    masks.push_back(L.mask(polys.back()[0].m));
    if (constant) {
      unit = true;
      return;
    }
    update(static_cast<int>(polys.size()) - 1);
  };

  std::vector<gb::Poly> inputs;
  std::vector<int> in_sugar;
  for (const auto& f : I.gens) {
    if (!same_spec(f.spec(), I.spec)) throw SpecMismatch("generator spec differs from ideal spec");
    if (f.is_zero()) continue;
    inputs.push_back(eng->from_mpoly(f, nullptr));
    in_sugar.push_back(f.total_degree());
  }
  std::vector<size_t> ord(inputs.size());
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return L.cmp(inputs[a][0].m, inputs[b][0].m) < 0; });

  std::vector<const gb::Poly*> G;
  std::vector<uint64_t> gm;
  for (size_t k : ord) {
    if (unit) break;
    active_set(G, gm, -1);
    gb::Poly h = eng->reduce(std::move(inputs[k]), G, gm, nullptr);
    if (!h.empty()) add_poly(std::move(h), in_sugar[k]);
  }

  while (!unit && !pairs.empty()) {
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k) {
      if (pairs[k].sugar < pairs[best].sugar ||
          (pairs[k].sugar == pairs[best].sugar && L.cmp(pairs[k].lcm, pairs[best].lcm) < 0))
        best = k;
    }
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    if (++processed > opts.pair_cap) throw GroebnerCapExceeded("Groebner pair cap exceeded");
    const gb::Poly& f = polys[p.i];
    const gb::Poly& g = polys[p.j];
    gb::Mon qf = L.quo(p.lcm, f[0].m), qg = L.quo(p.lcm, g[0].m);
    mpz_class d = gcd(f[0].c, g[0].c);
    mpz_class a = g[0].c / d, b = f[0].c / d;
    gb::Poly sf;
    sf.reserve(f.size());
    for (const auto& t : f) sf.push_back({L.mul(qf, t.m), t.c});
    gb::Poly s = eng->combine(sf, 1, a, b, qg, g);
    // combine() expects g's lead to cancel against sf[0]; it skips both.
    active_set(G, gm, -1);
    gb::Poly h = eng->reduce(std::move(s), G, gm, nullptr);
    if (!h.empty()) add_poly(std::move(h), p.sugar);
  }

  GroebnerBasis out;
  out.spec_ = I.spec;
  out.order_ = order;
  out.pairs_ = processed;
  if (unit) {
    gb::Poly one{{gb::Mon{}, mpz_class(1)}};
    eng->basis = {one};
  } else {
    std::vector<int> idx;
    for (size_t k = 0; k < polys.size(); ++k)
      if (active[k]) idx.push_back(static_cast<int>(k));
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return L.cmp(polys[a][0].m, polys[b][0].m) < 0; });
    std::vector<gb::Poly> red;
    for (int k : idx) {
      std::vector<const gb::Poly*> others;
      std::vector<uint64_t> om;
      for (int l : idx)
        if (l != k) {
          others.push_back(&polys[l]);
          om.push_back(masks[l]);
        }
      gb::Poly r = eng->reduce(polys[k], others, om, nullptr);
      gb::Engine::make_primitive(r);
      red.push_back(std::move(r));
    }
    eng->basis = std::move(red);
  }
  for (const auto& p : eng->basis) eng->masks.push_back(L.mask(p[0].m));
  for (const auto& p : eng->basis) {
    out.basis_.push_back(eng->to_mpoly(p, I.spec, true));
    out.leading_.push_back(L.decode(p[0].m));
  }
  out.engine_ = eng;
  return out;
}

bool GroebnerBasis::is_unit() const {
  return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

MPoly GroebnerBasis::normal_form(const MPoly& f) const {
  if (!engine_) throw Error("empty Groebner basis object");
  if (!same_spec(f.spec(), spec_)) throw SpecMismatch("normal form of a polynomial in another spec");
  if (f.is_zero()) return f;
  mpq_class scale;
  gb::Poly p = engine_->from_mpoly(f, &scale);
  std::vector<const gb::Poly*> G;
  for (const auto& b : engine_->basis) G.push_back(&b);
  mpq_class mult = 1;
  gb::Poly r = engine_->reduce(std::move(p), G, engine_->masks, &mult);
  MPoly out = engine_->to_mpoly(r, spec_, false).as_rational();
  out *= scale / mult;
  if (out.has_integer_coeffs() && f.domain() == CoeffDomain::Integer) return out.as_integer();
  return out;
}

}  // namespace mh
