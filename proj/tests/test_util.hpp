// Shared helpers for the unit and acceptance tests.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "multiheight/parse.hpp"
#include "multiheight/polycore.hpp"
#include "multiheight/resultants.hpp"

namespace mhtest {

using mh::GroupKind;
using mh::MPoly;
using mh::Spec;
using mh::VarGroup;

inline Spec affine(const std::string& name, int size) { return mh::make_spec({VarGroup{name, size, GroupKind::affine, {}}}); }

inline Spec groups(std::vector<VarGroup> gs) { return mh::make_spec(std::move(gs)); }

inline MPoly P(const Spec& s, const std::string& text) { return mh::parse_poly(text, s); }

// Random polynomial with up to `terms` terms, total degree <= deg and
// integer coefficients in [-c, c], restricted to the given variables (all
// variables when empty).
inline MPoly random_poly(std::mt19937_64& rng, const Spec& s, int terms, int deg, int c,
                         const std::vector<int>& vars = {}) {
  std::vector<int> vs = vars;
  if (vs.empty())
    for (int v = 0; v < s->nvars(); ++v) vs.push_back(v);
  std::vector<mh::Term> ts;
  std::uniform_int_distribution<int> cd(-c, c);
  std::uniform_int_distribution<int> dd(0, deg);
  std::uniform_int_distribution<size_t> vd(0, vs.size() - 1);
  for (int i = 0; i < terms; ++i) {
    mh::Exponent e(s->nvars(), 0);
    int k = dd(rng);
    for (int j = 0; j < k; ++j) e[vs[vd(rng)]]++;
    ts.push_back({e, mpq_class(cd(rng))});
  }
  return MPoly::from_terms(s, ts, mh::CoeffDomain::Integer);
}

// Uniformly random multihomogeneous form: every monomial of the given
// multidegree gets a coefficient in [-c, c].
inline MPoly random_form(std::mt19937_64& rng, const Spec& s, const std::vector<int>& multideg, int c) {
  auto pg = s->groups_of_kind(GroupKind::projective);
  std::vector<int> dims;
  for (int g : pg) dims.push_back(s->group(g).size - 1);
  std::uniform_int_distribution<int> cd(-c, c);
  std::vector<mh::Term> ts;
  for (const auto& m : mh::general_form_monomials(dims, multideg)) {
    mh::Exponent e(s->nvars(), 0);
    size_t k = 0;
    for (int g : pg)
      for (int v : s->vars_of_group(g)) e[v] = m[k++];
    ts.push_back({e, mpq_class(cd(rng))});
  }
  return MPoly::from_terms(s, ts, mh::CoeffDomain::Integer);
}

}  // namespace mhtest
