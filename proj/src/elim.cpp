#include "multiheight/elim.hpp"

#include <algorithm>

namespace mh {

namespace {

std::vector<std::string> groups_to_eliminate(const Spec& s) {
  std::vector<std::string> out;
  for (const auto& g : s->groups())
    if (g.kind == GroupKind::affine || g.kind == GroupKind::projective) out.push_back(g.name);
  return out;
}

MPoly single_generator(const Ideal& elim) {
  std::vector<MPoly> nz;
  for (const auto& g : elim.gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) throw ZeroElimination("elimination ideal is zero");
  if (nz.size() > 1)
    throw NonPrincipalElimination("elimination ideal is not principal (" + std::to_string(nz.size()) +
                                  " generators)");
  return nz[0];
}

std::vector<int> param_vars(const Spec& s) {
  std::vector<int> out;
  for (int g : s->groups_of_kind(GroupKind::parameter))
    for (int v : s->vars_of_group(g)) out.push_back(v);
  return out;
}

}  // namespace

Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop, const GroebnerOptions& opts) {
  for (const auto& g : drop) I.spec->group_index(g);
  if (drop.empty()) return I;
  GroebnerBasis G = groebner(I, MonomialOrder::elimination(I.spec, drop), opts);
  std::vector<bool> dropped(I.spec->nvars(), false);
  for (const auto& g : drop)
    for (int v : I.spec->vars_of_group(I.spec->group_index(g))) dropped[v] = true;
  Spec rest = spec_without(I.spec, drop);
  std::vector<MPoly> keep;
  for (const auto& b : G.basis()) {
    bool free = true;
    for (const auto& t : b.terms()) {
      for (int v = 0; v < I.spec->nvars() && free; ++v)
        if (dropped[v] && t.first[v] != 0) free = false;
      if (!free) break;
    }
    if (!free) continue;
    if (b.is_constant()) {
      keep.push_back(MPoly::constant(rest, b.constant_value()));
    } else {
      keep.push_back(respec(b, rest));
    }
  }
  return Ideal(rest, std::move(keep));
}

MPoly implicit_equation(const Ideal& V, const std::vector<MPoly>& q, const std::string& ygroup) {
  if (q.empty()) throw Error("implicit_equation needs at least one map component");
  Spec yspec = make_spec({VarGroup{ygroup, static_cast<int>(q.size()), GroupKind::auxiliary, {}}});
  Spec full = spec_concat(V.spec, yspec);
  std::vector<MPoly> gens;
  for (const auto& g : V.gens) gens.push_back(respec(g, full));
  int yoff = full->offset(full->group_index(ygroup));
  for (size_t j = 0; j < q.size(); ++j)
    gens.push_back(MPoly::variable(full, yoff + static_cast<int>(j)) - respec(q[j], full));
  Ideal elim = eliminate(Ideal(full, gens), groups_to_eliminate(V.spec));
  MPoly e = single_generator(elim);
  if (e.is_constant()) throw ZeroElimination("elimination ideal is the unit ideal");
  return squarefree_part(e);
}

MPoly minimal_polynomial(const Ideal& V, const std::vector<MPoly>& q, const std::string& zgroup,
                         const std::string& ygroup) {
  if (q.empty()) throw Error("minimal_polynomial needs at least one map component");
  const Spec& qs = q[0].spec();
  for (const auto& p : q)
    if (!same_spec(p.spec(), qs)) throw SpecMismatch("map components have different specs");
  qs->group_index(zgroup);
  Spec yspec = make_spec({VarGroup{ygroup, static_cast<int>(q.size()), GroupKind::auxiliary, {}}});
  Spec full = spec_concat(qs, yspec);
  std::vector<MPoly> gens;
  for (const auto& g : V.gens) gens.push_back(respec(g, full));
  int yoff = full->offset(full->group_index(ygroup));
  for (size_t j = 0; j < q.size(); ++j)
    gens.push_back(MPoly::variable(full, yoff + static_cast<int>(j)) - respec(q[j], full));
  Ideal elim = eliminate(Ideal(full, gens), groups_to_eliminate(qs));
  MPoly e;
  try {
    e = single_generator(elim);
  } catch (const ZeroElimination&) {
    throw DegenerateMinimalPolynomial("no algebraic relation between z and the map components");
  }
  int zv = elim.spec->offset(elim.spec->group_index(zgroup));
  if (e.degree_in_var(zv) <= 0) throw DegenerateMinimalPolynomial("minimal polynomial has z-degree 0");
  return squarefree_part(e);
}

MPoly chow_form(const Ideal& V, int r) {
  auto proj = V.spec->groups_of_kind(GroupKind::projective);
  if (proj.size() != 1) throw Error("chow_form expects exactly one projective group");
  const auto& xg = V.spec->group(proj[0]);
  int np1 = xg.size;
  if (r < 0 || r >= np1) throw Error("chow_form: dimension out of range");
  std::vector<VarGroup> ug;
  for (int i = 0; i <= r; ++i) {
    VarGroup g{"u" + std::to_string(i), np1, GroupKind::parameter, {}};
    for (int j = 0; j < np1; ++j) g.vars.push_back("u" + std::to_string(i) + "_" + std::to_string(j));
    ug.push_back(std::move(g));
  }
  Spec uspec = make_spec(ug);
  Spec full = spec_concat(spec_concat(uspec, V.spec), make_spec({VarGroup{"w_sat", 1, GroupKind::auxiliary, {}}}));
  std::vector<MPoly> gens;
  for (const auto& g : V.gens) gens.push_back(respec(g, full));
  int xoff = full->offset(full->group_index(xg.name));
  MPoly ell(full);
  for (int j = 0; j < np1; ++j) ell += MPoly::variable(full, xoff + j);
  for (int i = 0; i <= r; ++i) {
    int uoff = full->offset(full->group_index("u" + std::to_string(i)));
    MPoly L(full);
    for (int j = 0; j < np1; ++j) L += MPoly::variable(full, uoff + j) * MPoly::variable(full, xoff + j);
    gens.push_back(L);
  }
  gens.push_back(MPoly::variable(full, "w_sat") * ell - MPoly::constant(full, 1));
  Ideal elim = eliminate(Ideal(full, gens), {xg.name, "w_sat"});
  MPoly e = single_generator(elim);
  if (e.is_constant()) throw NonPrincipalElimination("Chow form elimination gave the unit ideal");
  return primitive_in(e, param_vars(V.spec).empty() ? std::vector<int>{} : [&] {
    std::vector<int> pv;
    for (const auto& g : V.spec->groups())
      if (g.kind == GroupKind::parameter)
        for (int v : elim.spec->vars_of_group(elim.spec->group_index(g.name))) pv.push_back(v);
    return pv;
  }());
}

MPoly initial_form(const MPoly& f, const std::vector<std::vector<long long>>& weights) {
  if (f.is_zero()) throw Error("initial form of the zero polynomial");
  std::vector<Term> cur = f.terms();
  for (const auto& w : weights) {
    if (static_cast<int>(w.size()) != f.spec()->nvars()) throw Error("weight vector has the wrong length");
    long long best = 0;
    bool first = true;
    for (const auto& t : cur) {
      long long s = 0;
      for (size_t v = 0; v < w.size(); ++v) s += w[v] * t.first[v];
      if (first || s < best) best = s;
      first = false;
    }
    std::vector<Term> next;
    for (auto& t : cur) {
      long long s = 0;
      for (size_t v = 0; v < w.size(); ++v) s += w[v] * t.first[v];
      if (s == best) next.push_back(std::move(t));
    }
    cur = std::move(next);
  }
  return MPoly::from_terms(f.spec(), std::move(cur), f.domain());
}

int affine_dimension(const Ideal& I) {
  std::vector<std::string> xgroups;
  std::vector<int> xvars;
  for (int g = 0; g < I.spec->ngroups(); ++g) {
    if (I.spec->group(g).kind == GroupKind::parameter) continue;
    xgroups.push_back(I.spec->group(g).name);
    for (int v : I.spec->vars_of_group(g)) xvars.push_back(v);
  }
  int nx = static_cast<int>(xvars.size());
  std::vector<MPoly> nz;
  for (const auto& g : I.gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) return nx;
  GroebnerBasis G = groebner(Ideal(I.spec, nz), MonomialOrder::block(I.spec, {xgroups}));
  std::vector<unsigned> supports;
  for (const auto& e : G.leading_exponents()) {
    unsigned m = 0;
    for (int k = 0; k < nx; ++k)
      if (e[xvars[k]] > 0) m |= 1u << k;
    if (m == 0) return -1;
    supports.push_back(m);
  }
  if (nx > 20) throw Error("affine_dimension: too many variables");
  int best = 0;
  for (unsigned S = 0; S < (1u << nx); ++S) {
    int sz = __builtin_popcount(S);
    if (sz <= best) continue;
    bool indep = true;
    for (unsigned m : supports)
      if ((m & ~S) == 0) {
        indep = false;
        break;
      }
    if (indep) best = sz;
  }
  return best;
}

}  // namespace mh
