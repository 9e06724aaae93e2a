#include "multiheight/measures.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace mh {

using cld = std::complex<long double>;

std::string HeightScalar::to_string() const {
  if (is_exact()) return exact.get_str();
  std::ostringstream os;
  os.precision(17);
  os << real;
  return os.str();
}

bool real_leq(double a, double b, double rel, double abs) {
  return a <= b + std::max(abs, rel * std::max(std::fabs(a), std::fabs(b)));
}

bool real_eq(double a, double b, double rel, double abs) { return real_leq(a, b, rel, abs) && real_leq(b, a, rel, abs); }

double log_abs(const mpz_class& z) {
  if (z == 0) throw Error("log of zero");
  long e = 0;
  double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

double log_abs(const mpq_class& q) { return log_abs(mpz_class(q.get_num())) - log_abs(mpz_class(q.get_den())); }

double height_inf(const MPoly& f) {
  if (!f.has_integer_coeffs()) throw Error("height_inf needs integer coefficients");
  if (f.is_zero()) return 0.0;
  mpz_class best = 0;
  for (const auto& t : f.terms()) {
    mpz_class a = abs(t.second.get_num());
    if (a > best) best = a;
  }
  return log_abs(best);
}

long height_t(const MPoly& f, const std::vector<int>& groups) {
  std::vector<int> vars;
  for (int g : groups)
    for (int v : f.spec()->vars_of_group(g)) vars.push_back(v);
  long best = 0;
  for (const auto& t : f.terms()) {
    long s = 0;
    for (int v : vars) s += t.first[v];
    best = std::max(best, s);
  }
  return best;
}

long height_t(const MPoly& f, std::string_view group) {
  return height_t(f, std::vector<int>{f.spec()->group_index(group)});
}

double l1_norm_log(const MPoly& f) {
  if (f.is_zero()) throw Error("l1 norm log of the zero polynomial");
  mpq_class s = 0;
  for (const auto& t : f.terms()) s += abs(t.second);
  return log_abs(s);
}

double sup_norm_upper_log(const MPoly& f) { return l1_norm_log(f); }

namespace {

cld horner(const std::vector<cld>& c, cld z) {
  cld r = 0;
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

cld horner_deriv(const std::vector<cld>& c, cld z) {
  cld r = 0;
  for (size_t i = c.size(); i-- > 1;) r = r * z + c[i] * static_cast<long double>(i);
  return r;
}

// Roots of sum c_k z^k by the Aberth iteration; c.back() != 0.
std::vector<cld> aberth_roots(const std::vector<cld>& c) {
  int d = static_cast<int>(c.size()) - 1;
  std::vector<cld> z(d);
  if (d == 0) return z;
  if (d == 1) {
    z[0] = -c[0] / c[1];
    return z;
  }
  long double R = 0;
  for (int k = 0; k < d; ++k) {
    long double q = std::abs(c[k] / c[d]);
    if (q > 0) R = std::max(R, std::pow(q, 1.0L / (d - k)));
  }
  R = std::max(R * 2, 1e-3L);
  for (int k = 0; k < d; ++k) {
    long double a = 2 * std::numbers::pi_v<long double> * k / d + 0.4L;
    z[k] = std::polar(R * (0.5L + 0.5L * (k + 1) / d), a);
  }
  for (int it = 0; it < 800; ++it) {
    long double worst = 0;
    for (int k = 0; k < d; ++k) {
      cld p = horner(c, z[k]);
      if (p == cld(0)) continue;
      cld dp = horner_deriv(c, z[k]);
      cld ratio = p / dp;
      cld s = 0;
      for (int j = 0; j < d; ++j)
        if (j != k) s += 1.0L / (z[k] - z[j]);
      cld w = ratio / (1.0L - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

struct RootMeasure {
  long double value = 0;
  long double radius = 0;
  bool certified = true;
};

// sum over roots of log+|root| for a squarefree polynomial with rational
// coefficients, with inclusion disks d * |p/p'| inflated by rounding bounds.
RootMeasure squarefree_root_measure(const std::vector<mpq_class>& coeffs) {
  int d = static_cast<int>(coeffs.size()) - 1;
  RootMeasure out;
  if (d <= 0) return out;
  std::vector<cld> c(d + 1);
  for (int k = 0; k <= d; ++k) c[k] = cld(static_cast<long double>(coeffs[k].get_d()), 0);
  auto roots = aberth_roots(c);
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      cld dp = horner_deriv(c, z);
      if (std::abs(dp) == 0) break;
      z -= horner(c, z) / dp;
    }
  }
  std::vector<long double> rad(d);
  const long double eps = LDBL_EPSILON;
  for (int k = 0; k < d; ++k) {
    long double az = std::abs(roots[k]);
    long double absum = 0, dabsum = 0, pw = 1;
    for (int i = 0; i <= d; ++i) {
      absum += std::abs(c[i]) * pw;
      if (i + 1 <= d) dabsum += std::abs(c[i + 1]) * (i + 1) * pw;
      pw *= az;
    }
    long double num = std::abs(horner(c, roots[k])) + 4 * (d + 2) * eps * absum;
    // Coefficients were rounded to double precision as well.
    num += 2 * DBL_EPSILON * absum;
    long double den = std::abs(horner_deriv(c, roots[k])) - 4 * (d + 2) * eps * dabsum - 2 * DBL_EPSILON * dabsum;
    if (den <= 0) {
      out.certified = false;
      rad[k] = INFINITY;
    } else {
      rad[k] = d * num / den;
    }
  }
  for (int i = 0; i < d && out.certified; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(roots[i] - roots[j]) <= rad[i] + rad[j]) {
        out.certified = false;
        break;
      }
  for (int k = 0; k < d; ++k) {
    long double az = std::abs(roots[k]);
    if (az > 1) out.value += std::log(az);
    out.radius += rad[k];
  }
  return out;
}

std::vector<mpq_class> univariate_coeffs(const MPoly& f, int v) {
  int d = std::max(0, f.degree_in_var(v));
  std::vector<mpq_class> c(d + 1);
  for (const auto& t : f.terms()) c[t.first[v]] += t.second;
  return c;
}

// f = lc * prod g_i^i with squarefree primitive g_i; returns (i, g_i).
std::vector<std::pair<int, MPoly>> squarefree_decomposition(const MPoly& f, int v) {
  std::vector<std::pair<int, MPoly>> out;
  MPoly a = primitive_part(f);
  MPoly c = mp_gcd(a, derivative(a, v));
  MPoly w = primitive_part(divexact(a, c));
  int i = 1;
  while (!c.is_constant()) {
    MPoly y = mp_gcd(w, c);
    MPoly z = primitive_part(divexact(w, y));
    if (!z.is_constant()) out.emplace_back(i, z);
    ++i;
    w = y;
    c = primitive_part(divexact(c, y));
  }
  if (!w.is_constant()) out.emplace_back(i, w);
  return out;
}

MahlerEstimate univariate_mahler(const MPoly& f, int v, double tol) {
  auto coeffs = univariate_coeffs(f, v);
  long double est = log_abs(coeffs.back());
  long double rad = 0;
  for (const auto& [mult, g] : squarefree_decomposition(f, v)) {
    RootMeasure rm = squarefree_root_measure(univariate_coeffs(g, v));
    if (!rm.certified) throw MahlerToleranceError("root inclusion disks overlap");
    est += mult * rm.value;
    rad += mult * rm.radius;
  }
  rad += 1e-15L * (1 + std::fabs(est));
  if (rad > tol) throw MahlerToleranceError("Mahler radius " + std::to_string(static_cast<double>(rad)) + " exceeds tolerance");
  return {static_cast<double>(est), static_cast<double>(rad)};
}

// m of a univariate polynomial with complex coefficients (Jensen).
long double complex_jensen(std::vector<cld> c) {
  long double mx = 0;
  for (auto& x : c) mx = std::max(mx, std::abs(x));
  if (mx == 0) return -INFINITY;
  while (c.size() > 1 && std::abs(c.back()) <= 1e-15L * mx) c.pop_back();
  long double m = std::log(std::abs(c.back()));
  for (const auto& z : aberth_roots(c)) {
    long double a = std::abs(z);
    if (a > 1) m += std::log(a);
  }
  return m;
}

MahlerEstimate torus_mahler(const MPoly& f, const std::vector<int>& active, double tol) {
  int k = static_cast<int>(active.size());
  if (k > 3) throw Error("torus quadrature handles at most three variables");
  int y = active.back();
  int outer = k - 1;
  int dy = f.degree_in_var(y);
  struct T {
    std::vector<int> e;
    int ey;
    long double c;
  };
  std::vector<T> ts;
  for (const auto& t : f.terms()) {
    T x;
    for (int i = 0; i < outer; ++i) x.e.push_back(t.first[active[i]]);
    x.ey = t.first[y];
    x.c = static_cast<long double>(t.second.get_d());
    ts.push_back(std::move(x));
  }
  auto run = [&](long long N) {
    long double sum = 0;
    long long total = 1;
    for (int i = 0; i < outer; ++i) total *= N;
    std::vector<cld> c(dy + 1);
    std::vector<int> idx(outer, 0);
    for (long long s = 0; s < total; ++s) {
      long long r = s;
      for (int i = 0; i < outer; ++i) {
        idx[i] = static_cast<int>(r % N);
        r /= N;
      }
      std::fill(c.begin(), c.end(), cld(0));
      for (const auto& t : ts) {
        long double ang = 0;
        for (int i = 0; i < outer; ++i) ang += 2 * std::numbers::pi_v<long double> * (idx[i] + 0.5L) / N * t.e[i];
        c[t.ey] += t.c * std::polar(1.0L, ang);
      }
      sum += complex_jensen(c);
    }
    return sum / total;
  };
  if (outer == 0) {
    long double v = run(1);
    return {static_cast<double>(v), 1e-13};
  }
  long long N = 16;
  long double prev = run(N / 2);
  while (true) {
    long long total = 1;
    for (int i = 0; i < outer; ++i) total *= N;
    if (total > (1LL << 20)) throw MahlerToleranceError("quadrature cap reached before tolerance");
    long double cur = run(N);
    long double rad = std::fabs(cur - prev);
    if (rad <= tol) return {static_cast<double>(cur), static_cast<double>(std::max(rad, 1e-13L))};
    prev = cur;
    N *= 2;
  }
}

}  // namespace

MahlerEstimate mahler_estimate(const MPoly& f0, MahlerMethod method, double tol) {
  if (f0.is_zero()) throw Error("Mahler measure of the zero polynomial");
  const Spec& s = f0.spec();
  std::vector<Term> terms = f0.terms();
  for (int g : s->groups_of_kind(GroupKind::projective)) {
    auto vars = s->vars_of_group(g);
    if (vars.size() < 2) continue;
    int deg = -1;
    bool homog = true;
    for (const auto& t : terms) {
      int d = 0;
      for (int v : vars) d += t.first[v];
      if (deg < 0) deg = d;
      if (d != deg) homog = false;
    }
    if (!homog) continue;
    for (auto& t : terms) t.first[vars[0]] = 0;
  }
  MPoly f = MPoly::from_terms(s, std::move(terms));
  std::vector<int> active;
  for (int v = 0; v < s->nvars(); ++v)
    if (f.degree_in_var(v) > 0) active.push_back(v);
  if (active.empty()) return {log_abs(f.constant_value()), 0.0};
  if (active.size() == 1 && method != MahlerMethod::torus_quadrature) return univariate_mahler(f, active[0], tol);
  if (method == MahlerMethod::roots) throw Error("root method needs a univariate polynomial");
  return torus_mahler(f, active, tol);
}

mpq_class philippon_correction_exact(const std::vector<int>& dims, const std::vector<int>& degrees) {
  if (dims.size() != degrees.size()) throw Error("philippon_correction: length mismatch");
  mpq_class s = 0;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0) throw Error("philippon_correction: negative dimension");
    mpq_class h = 0;
    for (int j = 1; j <= dims[i]; ++j) h += mpq_class(1, 2 * j);
    s += h * degrees[i];
  }
  return s;
}

double philippon_correction(const std::vector<int>& dims, const std::vector<int>& degrees) {
  return philippon_correction_exact(dims, degrees).get_d();
}

std::vector<HeightScalar> canonical_point_height(const std::vector<std::vector<mpz_class>>& coords) {
  std::vector<HeightScalar> out;
  for (const auto& g : coords) {
    mpz_class d = 0;
    for (const auto& x : g) d = gcd(d, x);
    if (d == 0) throw Error("point has an all-zero coordinate group");
    mpz_class best = 0;
    for (const auto& x : g) best = std::max(best, mpz_class(abs(x) / d));
    out.push_back(HeightScalar::real_value(log_abs(best)));
  }
  return out;
}

std::vector<HeightScalar> canonical_point_height(const std::vector<std::vector<MPoly>>& coords) {
  std::vector<HeightScalar> out;
  for (const auto& g : coords) {
    MPoly d;
    bool any = false;
    for (const auto& x : g) {
      if (x.is_zero()) continue;
      d = any ? mp_gcd(d, x) : primitive_part(x);
      any = true;
    }
    if (!any) throw Error("point has an all-zero coordinate group");
    long best = 0;
    for (const auto& x : g) {
      if (x.is_zero()) continue;
      best = std::max<long>(best, divexact(x, d).total_degree());
    }
    out.push_back(HeightScalar::integer(best));
  }
  return out;
}

DivisorHeight divisor_height(const MPoly& fD, DivisorMode mode, double tol) {
  if (fD.is_zero()) throw Error("divisor of the zero polynomial");
  if (!fD.spec()->groups_of_kind(GroupKind::projective).empty() && !is_multihomogeneous(fD))
    throw Error("divisor equation is not multihomogeneous");
  if (mode == DivisorMode::canonical_Z) {
    if (!fD.has_integer_coeffs()) throw Error("divisor equation must have integer coefficients");
    if (content_and_primitive(fD).content != 1) throw Error("divisor equation is not primitive");
    auto m = mahler_estimate(fD, MahlerMethod::automatic, tol);
    return {HeightScalar::real_value(m.estimate), m.radius};
  }
  auto pg = fD.spec()->groups_of_kind(GroupKind::parameter);
  std::vector<int> pv;
  for (int g : pg)
    for (int v : fD.spec()->vars_of_group(g)) pv.push_back(v);
  if (!content_in(fD, pv).is_constant()) throw Error("divisor equation is not primitive over k[t]");
  return {HeightScalar::integer(height_t(fD, pg)), 0.0};
}

}  // namespace mh
