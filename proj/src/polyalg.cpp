// Exact division, gcd and squarefree parts.
#include <algorithm>

#include "multiheight/polycore.hpp"

namespace mh {

namespace {

bool divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Coefficients of f as a polynomial in variable v; entry k multiplies v^k.
std::vector<MPoly> coeffs_in_var(const MPoly& f, int v) {
  int d = std::max(f.degree_in_var(v), 0);
  std::vector<std::vector<Term>> parts(d + 1);
  for (const auto& [e, c] : f.terms()) {
    Exponent r = e;
    int k = r[v];
    r[v] = 0;
    parts[k].emplace_back(std::move(r), c);
  }
  std::vector<MPoly> out;
  for (auto& p : parts) out.push_back(MPoly::from_terms(f.spec(), std::move(p), CoeffDomain::Rational));
  return out;
}

MPoly var_power(const Spec& s, int v, int k) {
  Exponent e(s->nvars(), 0);
  e[v] = k;
  return MPoly::monomial(s, std::move(e), 1);
}

MPoly gcd_rec(const MPoly& a, const MPoly& b);

MPoly content_var(const MPoly& f, int v) {
  auto cs = coeffs_in_var(f, v);
  MPoly g(f.spec(), CoeffDomain::Integer);
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive_part(c) : gcd_rec(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly pp_var(const MPoly& f, int v) {
  if (f.is_zero()) return f;
  MPoly c = content_var(f, v);
  return primitive_part(divexact(f, c));
}

MPoly prem(const MPoly& a, const MPoly& b, int v) {
  int n = b.degree_in_var(v);
  MPoly lcb = coeffs_in_var(b, v)[n];
  MPoly r = a;
  while (!r.is_zero() && r.degree_in_var(v) >= n) {
    int m = r.degree_in_var(v);
    MPoly lcr = coeffs_in_var(r, v)[m];
    r = lcb * r - lcr * var_power(r.spec(), v, m - n) * b;
    r = primitive_part(r);
  }
  return r;
}

MPoly gcd_rec(const MPoly& a0, const MPoly& b0) {
  if (a0.is_zero()) return primitive_part(b0);
  if (b0.is_zero()) return primitive_part(a0);
  const Spec& s = a0.spec();
  if (a0.is_constant() || b0.is_constant()) return MPoly::constant(s, 1);
  MPoly a = primitive_part(a0), b = primitive_part(b0);
  int n = s->nvars();
  int best = -1, best_deg = 0;
  int only_a = -1, only_b = -1;
  for (int v = 0; v < n; ++v) {
    int da = a.degree_in_var(v), db = b.degree_in_var(v);
    if (da > 0 && db > 0) {
      int d = std::max(da, db);
      if (best < 0 || d < best_deg) {
        best = v;
        best_deg = d;
      }
    } else if (da > 0 && only_a < 0) {
      only_a = v;
    } else if (db > 0 && only_b < 0) {
      only_b = v;
    }
  }
  if (only_a >= 0) return gcd_rec(content_var(a, only_a), b);
  if (only_b >= 0) return gcd_rec(a, content_var(b, only_b));
  if (best < 0) return MPoly::constant(s, 1);
  int v = best;
  MPoly ca = content_var(a, v), cb = content_var(b, v);
  MPoly c = gcd_rec(ca, cb);
  MPoly pa = primitive_part(divexact(a, ca)), pb = primitive_part(divexact(b, cb));
  if (pa.degree_in_var(v) < pb.degree_in_var(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    MPoly r = prem(pa, pb, v);
    pa = std::move(pb);
    pb = r.is_zero() ? r : pp_var(r, v);
    if (!pb.is_zero() && pb.degree_in_var(v) == 0) {
      pa = MPoly::constant(s, 1);
      break;
    }
  }
  MPoly g = pa.degree_in_var(v) > 0 ? pp_var(pa, v) : MPoly::constant(s, 1);
  return primitive_part(c * g);
}

}  // namespace

std::optional<MPoly> try_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (!same_spec(a.spec(), b.spec())) throw SpecMismatch("division operands have different specs");
  MPoly q(a.spec(), CoeffDomain::Rational);
  MPoly r = a.as_rational();
  const auto& [lb, cb] = b.leading_term();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading_term();
    if (!divides(lb, lr)) return std::nullopt;
    Exponent e(lr.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = lr[i] - lb[i];
    mpq_class c = cr / cb;
    MPoly t = MPoly::monomial(a.spec(), e, c);
    qterms.emplace_back(std::move(e), c);
    r -= t * b;
  }
  MPoly out = MPoly::from_terms(a.spec(), std::move(qterms), CoeffDomain::Rational);
  if (out.has_integer_coeffs() && a.domain() == CoeffDomain::Integer) return out.as_integer();
  return out;
}

MPoly divexact(const MPoly& a, const MPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error("inexact polynomial division");
  return *q;
}

MPoly mp_gcd(const MPoly& a, const MPoly& b) {
  if (!same_spec(a.spec(), b.spec())) throw SpecMismatch("gcd operands have different specs");
  if (a.is_zero() && b.is_zero()) return MPoly(a.spec(), CoeffDomain::Integer);
  return gcd_rec(a, b);
}

MPoly content_in(const MPoly& f, const std::vector<int>& coeff_vars) {
  if (f.is_zero()) return f;
  int n = f.spec()->nvars();
  std::vector<bool> is_coeff(n, false);
  for (int v : coeff_vars) is_coeff.at(v) = true;
  std::map<Exponent, std::vector<Term>> parts;
  for (const auto& [e, c] : f.terms()) {
    Exponent key(n, 0), rest(n, 0);
    for (int v = 0; v < n; ++v) (is_coeff[v] ? rest : key)[v] = e[v];
    parts[key].emplace_back(std::move(rest), c);
  }
  MPoly g(f.spec(), CoeffDomain::Integer);
  for (auto& [k, ts] : parts) {
    MPoly c = MPoly::from_terms(f.spec(), std::move(ts), CoeffDomain::Rational);
    g = g.is_zero() ? primitive_part(c) : mp_gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly primitive_in(const MPoly& f, const std::vector<int>& coeff_vars) {
  if (f.is_zero()) return f;
  return primitive_part(divexact(f, content_in(f, coeff_vars)));
}

namespace {

using UPoly = std::vector<mpq_class>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly urem(UPoly a, const UPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    mpq_class q = a.back() / b.back();
    for (int i = 0; i <= db; ++i) a[da - db + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int ugcd_degree(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = urem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

// Certifies that no repeated factor of f involves v by specializing the
// other variables at a point where the leading coefficient survives.
bool separable_in(const MPoly& f, int v) {
  int n = f.spec()->nvars();
  int d = f.degree_in_var(v);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<mpq_class> pt(n);
    for (int k = 0; k < n; ++k) pt[k] = (k * 7 + attempt * 13) % 23 + 2 + attempt;
    UPoly u(d + 1);
    for (const auto& [e, c] : f.terms()) {
      mpq_class t = c;
      for (int k = 0; k < n; ++k) {
        if (k == v || e[k] == 0) continue;
        mpq_class p;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), pt[k].get_num_mpz_t(), e[k]);
        mpz_pow_ui(den.get_mpz_t(), pt[k].get_den_mpz_t(), e[k]);
        p = mpq_class(num, den);
        t *= p;
      }
      u[e[v]] += t;
    }
    if (u[d] == 0) continue;
    UPoly du(d);
    for (int i = 1; i <= d; ++i) du[i - 1] = u[i] * i;
    return ugcd_degree(u, du) == 0;
  }
  return false;
}

}  // namespace

MPoly squarefree_part(const MPoly& f) {
  if (f.is_zero()) return f;
  MPoly g = primitive_part(f);
  bool separable = true;
  for (int v = 0; v < g.spec()->nvars() && separable; ++v)
    if (g.degree_in_var(v) > 0) separable = separable_in(g, v);
  if (separable) return g;
  // gcd(g, dg/dx_1, ..., dg/dx_n) is prod p_i^(e_i - 1) in characteristic 0.
  MPoly d = g;
  for (int v = 0; v < g.spec()->nvars() && !d.is_constant(); ++v)
    if (g.degree_in_var(v) > 0) d = mp_gcd(d, derivative(g, v));
  if (d.is_constant()) return g;
  return primitive_part(divexact(g, d));
}

}  // namespace mh
