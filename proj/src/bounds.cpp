#include "multiheight/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace mh {

namespace {

void check_common(const Invariants& inv) {
  if (inv.d.empty()) throw BoundInputError("need at least one polynomial");
  for (int x : inv.d)
    if (x < 1) throw BoundInputError("degrees must be at least 1");
  if (inv.degV < 1) throw BoundInputError("deg(V) must be at least 1");
  if (inv.hV < 0 || inv.hV_t < 0) throw BoundInputError("heights must be nonnegative");
  for (double x : inv.h)
    if (x < 0) throw BoundInputError("heights must be nonnegative");
  for (long x : inv.ht)
    if (x < 0) throw BoundInputError("t-degrees must be nonnegative");
  if (inv.n < 1 || inv.r < 0) throw BoundInputError("need n >= 1 and r >= 0");
}

void check_weak(const Invariants& inv) {
  check_common(inv);
  if (inv.s() > inv.r + 1) throw BoundInputError("weak bounds need s <= r+1");
}

const std::vector<double>& need_h(const Invariants& inv) {
  if (static_cast<int>(inv.h.size()) != inv.s()) throw BoundInputError("need one height per polynomial");
  return inv.h;
}

const std::vector<long>& need_ht(const Invariants& inv) {
  if (static_cast<int>(inv.ht.size()) != inv.s()) throw BoundInputError("need one t-degree per polynomial");
  return inv.ht;
}

mpz_class prod_first(const std::vector<int>& d, int k) {
  mpz_class p = 1;
  for (int j = 0; j < k && j < static_cast<int>(d.size()); ++j) p *= d[j];
  return p;
}

// Row l of delta, or ht when there is a single group and no matrix.
std::vector<long> group_degrees(const Invariants& inv, int l) {
  if (!inv.delta.empty()) {
    if (l >= static_cast<int>(inv.delta.size()) || static_cast<int>(inv.delta[l].size()) != inv.s())
      throw BoundInputError("delta must have one row per parameter group and one column per polynomial");
    return inv.delta[l];
  }
  if (l == 0) return need_ht(inv);
  throw BoundInputError("missing t-degrees for parameter group " + std::to_string(l));
}

long group_height(const Invariants& inv, int l) {
  if (!inv.hV_groups.empty()) return inv.hV_groups.at(l);
  return l == 0 ? inv.hV_t : 0;
}

void check_sorted(const std::vector<int>& d, int upto) {
  for (int j = 1; j < upto; ++j)
    if (d[j] > d[j - 1]) throw BoundInputError("degrees must be sorted in decreasing order");
}

double dbl(const mpz_class& z) { return z.get_d(); }

mpq_class frac(long a, long b) {
  mpq_class q{mpz_class(a), mpz_class(b)};
  q.canonicalize();
  return q;
}

}  // namespace

ZBound weak_Z(const Invariants& inv) {
  check_weak(inv);
  const auto& h = need_h(inv);
  mpz_class P = prod_first(inv.d, inv.s());
  double sum = 0;
  for (int l = 0; l < inv.s(); ++l) sum += h[l] / inv.d[l];
  ZBound b;
  b.deg = P * inv.degV;
  b.ht = dbl(P) * (inv.hV + dbl(inv.degV) * (sum + (4.0 * inv.r + 8.0) * std::log(inv.n + 3.0)));
  return b;
}

ZBound weak_Z_groups(const Invariants& inv) {
  check_weak(inv);
  const auto& h = need_h(inv);
  if (static_cast<int>(inv.supp.size()) != inv.s()) throw BoundInputError("need support sizes");
  for (long x : inv.supp)
    if (x < 1) throw BoundInputError("support sizes must be positive");
  mpz_class P = prod_first(inv.d, inv.s());
  std::vector<std::vector<long>> delta;
  for (int l = 0; l < inv.m(); ++l) delta.push_back(group_degrees(inv, l));
  double sum = 0;
  for (int j = 0; j < inv.s(); ++j) {
    double term = h[j] + std::log(static_cast<double>(inv.supp[j]));
    for (int l = 0; l < inv.m(); ++l) term += 2.0 * delta[l][j] * std::log(inv.p[l] + 1.0);
    sum += term / inv.d[j];
  }
  ZBound b;
  b.deg = P * inv.degV;
  b.ht = dbl(P) * (inv.hV + dbl(inv.degV) * ((3.0 * inv.r + 7.0) * std::log(inv.n + 3.0) + sum));
  for (int l = 0; l < inv.m(); ++l) {
    mpq_class acc = 0;
    for (int j = 0; j < inv.s(); ++j) acc += frac(delta[l][j], inv.d[j]);
    acc *= mpq_class(P * inv.degV);
    acc.canonicalize();
    b.deg_t.push_back(acc);
  }
  return b;
}

StrongZBound strong_Z(const Invariants& inv) {
  check_common(inv);
  const auto& h = need_h(inv);
  if (inv.d0 < 1 || inv.h0 < 0) throw BoundInputError("need d0 >= 1 and h0 >= 0");
  check_sorted(inv.d, inv.s());
  int k = std::min(inv.s(), inv.r + 1);
  mpz_class D = prod_first(inv.d, k);
  double hmax = *std::max_element(h.begin(), h.end());
  double sum = 0;
  for (int l = 0; l < k; ++l) sum += hmax / inv.d[l];
  double c = (6.0 * inv.r + 17.0) * std::log(inv.n + 4.0) +
             3.0 * (inv.r + 1.0) * std::log(std::max(1.0, static_cast<double>(inv.s() - inv.r)));
  StrongZBound b;
  b.mu = 2 * D * inv.degV;
  b.deg = 4 * inv.d0 * D * inv.degV;
  b.ht = 2.0 * inv.d0 * dbl(D) * (inv.hV + dbl(inv.degV) * (3.0 * inv.h0 / (2.0 * inv.d0) + sum + c));
  return b;
}

FFBound weak_ff(const Invariants& inv) {
  check_weak(inv);
  const auto& ht = need_ht(inv);
  mpz_class P = prod_first(inv.d, inv.s());
  mpq_class sum = 0;
  for (int l = 0; l < inv.s(); ++l) sum += frac(ht[l], inv.d[l]);
  FFBound b;
  b.deg = P * inv.degV;
  b.deg_t = mpq_class(P) * (mpq_class(inv.hV_t) + mpq_class(inv.degV) * sum);
  b.deg_t.canonicalize();
  return b;
}

FFBound weak_ff_groups(const Invariants& inv) {
  check_weak(inv);
  mpz_class P = prod_first(inv.d, inv.s());
  FFBound b;
  b.deg = P * inv.degV;
  for (int l = 0; l < inv.m(); ++l) {
    auto dl = group_degrees(inv, l);
    mpq_class sum = 0;
    for (int j = 0; j < inv.s(); ++j) sum += frac(dl[j], inv.d[j]);
    mpq_class v = mpq_class(P) * (mpq_class(group_height(inv, l)) + mpq_class(inv.degV) * sum);
    v.canonicalize();
    b.deg_t_groups.push_back(v);
  }
  if (!b.deg_t_groups.empty()) b.deg_t = b.deg_t_groups[0];
  return b;
}

StrongFFBound strong_ff(const Invariants& inv) {
  check_common(inv);
  const auto& ht = need_ht(inv);
  if (inv.d0 < 1 || inv.h0_t < 0) throw BoundInputError("need d0 >= 1 and h0 >= 0");
  check_sorted(inv.d, inv.s());
  int k = std::min(inv.s(), inv.r + 1);
  mpz_class D = prod_first(inv.d, k);
  mpz_class D0 = D * inv.d0;
  long hmax = *std::max_element(ht.begin(), ht.end());
  mpq_class sum = 0;
  for (int l = 0; l < k; ++l) sum += frac(hmax, inv.d[l]);
  StrongFFBound b;
  b.mu = 2 * D * inv.degV;
  b.deg = 4 * D0 * inv.degV;
  mpq_class inner = frac(3 * inv.h0_t, 2 * inv.d0) + sum;
  inner.canonicalize();
  b.deg_t = 2 * mpq_class(D0) * (mpq_class(inv.hV_t) + mpq_class(inv.degV) * inner);
  b.deg_t.canonicalize();
  return b;
}

MixedSBound mixed_S(const Invariants& inv, BoundKind kind) {
  check_common(inv);
  int s = inv.s();
  check_sorted(inv.d, s - 1);
  int k = std::min(s - 1, inv.r);
  mpz_class Dp = prod_first(inv.d, k) * inv.d[s - 1];
  MixedSBound b;
  b.deg = Dp * inv.degV;
  if (kind == BoundKind::ff) {
    const auto& ht = need_ht(inv);
    long hmax = 0;
    for (int j = 0; j < s - 1; ++j) hmax = std::max(hmax, ht[j]);
    mpq_class sum = frac(ht[s - 1], inv.d[s - 1]);
    for (int l = 0; l < k; ++l) sum += frac(hmax, inv.d[l]);
    b.deg_t = mpq_class(Dp) * (mpq_class(inv.hV_t) + mpq_class(inv.degV) * sum);
    b.deg_t.canonicalize();
  } else {
    const auto& h = need_h(inv);
    double hmax = 0;
    for (int j = 0; j < s - 1; ++j) hmax = std::max(hmax, h[j]);
    double sum = h[s - 1] / inv.d[s - 1];
    for (int l = 0; l < k; ++l) sum += hmax / inv.d[l];
    double c = (6.0 * inv.r + 9.0) * std::log(inv.n + 3.0) +
               3.0 * inv.r * std::log(std::max(1.0, static_cast<double>(s - inv.r)));
    b.ht = dbl(Dp) * (inv.hV + dbl(inv.degV) * (sum + c));
  }
  return b;
}

double resultant_cofactor_height(const Invariants& inv) {
  check_common(inv);
  mpz_class P = prod_first(inv.d, inv.s());
  return dbl(P) * (inv.hV + (6.0 * inv.r + 10.0) * std::log(inv.n + 3.0) * dbl(inv.degV));
}

namespace {

HalfSpace exact_space(std::string label, std::vector<mpq_class> w, mpq_class beta) {
  HalfSpace hs;
  hs.label = std::move(label);
  hs.exact = true;
  hs.beta = beta;
  hs.beta_real = beta.get_d();
  for (const auto& x : w) hs.w_real.push_back(x.get_d());
  hs.w = std::move(w);
  return hs;
}

HalfSpace real_space(std::string label, std::vector<double> w, double beta) {
  HalfSpace hs;
  hs.label = std::move(label);
  hs.exact = false;
  hs.w_real = std::move(w);
  hs.beta_real = beta;
  return hs;
}

}  // namespace

PerronRegion perron_region(const Invariants& inv, PerronVariant variant) {
  check_common(inv);
  int R = inv.s();
  if (R != inv.r + 1) throw BoundInputError("Perron bounds need exactly r+1 map components");
  mpz_class P = prod_first(inv.d, R);
  int dim_c = 0;
  for (int x : inv.p) dim_c += x;
  PerronRegion out;
  NewtonRegion& reg = out.region;
  reg.dim_a = R;
  reg.dim_c = dim_c;
  reg.has_height = variant == PerronVariant::Z || variant == PerronVariant::Z_nonfinite;
  int D = reg.dim();

  auto weighted_degree = [&]() {
    std::vector<mpq_class> w(D, 0);
    for (int j = 0; j < R; ++j) w[j] = inv.d[j];
    reg.half_spaces.push_back(exact_space("weighted degree", w, mpq_class(P * inv.degV)));
  };
  auto group_space = [&](int l, bool with_hv) {
    auto dl = group_degrees(inv, l);
    std::vector<mpq_class> w(D, 0);
    for (int j = 0; j < R; ++j) w[j] = dl[j];
    int off = R;
    for (int k = 0; k < l; ++k) off += inv.p[k];
    for (int k = 0; k < inv.p[l]; ++k) w[off + k] = 1;
    mpq_class sum = 0;
    for (int j = 0; j < R; ++j) sum += frac(dl[j], inv.d[j]);
    mpq_class beta = mpq_class(P) * (mpq_class(with_hv ? group_height(inv, l) : 0) + mpq_class(inv.degV) * sum);
    beta.canonicalize();
    reg.half_spaces.push_back(exact_space("t-degree group " + std::to_string(l), w, beta));
  };
  auto height_space = [&](double beta) {
    const auto& h = need_h(inv);
    std::vector<double> w(D, 0.0);
    for (int j = 0; j < R; ++j) w[j] = h[j];
    w[D - 1] = 1.0;
    reg.half_spaces.push_back(real_space("height", w, beta));
  };
  auto deg_caps = [&]() {
    for (int i = 0; i < R; ++i) {
      mpz_class c = inv.degV;
      for (int j = 0; j < R; ++j)
        if (j != i) c *= inv.d[j];
      out.deg_y_caps.push_back(c);
      std::vector<mpq_class> w(D, 0);
      w[i] = 1;
      reg.half_spaces.push_back(exact_space("deg y_" + std::to_string(i + 1), w, mpq_class(c)));
    }
  };

  switch (variant) {
    case PerronVariant::param:
      weighted_degree();
      for (int l = 0; l < inv.m(); ++l) group_space(l, true);
      break;
    case PerronVariant::Z: {
      weighted_degree();
      for (int l = 0; l < inv.m(); ++l) group_space(l, false);
      const auto& h = need_h(inv);
      if (static_cast<int>(inv.supp.size()) != R) throw BoundInputError("need support sizes");
      double sum = 0;
      for (int j = 0; j < R; ++j) {
        double term = h[j] + std::log(inv.supp[j] + 2.0);
        for (int l = 0; l < inv.m(); ++l) term += group_degrees(inv, l)[j] * std::log(inv.p[l] + 1.0);
        sum += term / inv.d[j];
      }
      height_space(dbl(P) * (inv.hV + dbl(inv.degV) * (std::log(inv.r + 2.0) + sum)));
      break;
    }
    case PerronVariant::Z_nonfinite: {
      if (inv.m() != 0) throw BoundInputError("this variant takes no parameters");
      weighted_degree();
      const auto& h = need_h(inv);
      double sum = 0;
      for (int j = 0; j < R; ++j) sum += h[j] / inv.d[j];
      height_space(dbl(P) * (inv.hV + dbl(inv.degV) * (sum + (inv.r + 2.0) * std::log(2.0 * inv.n + 8.0))));
      break;
    }
    case PerronVariant::rational_param: {
      deg_caps();
      const auto& ht = need_ht(inv);
      mpq_class sum = 0;
      for (int j = 0; j < R; ++j) sum += frac(ht[j], inv.d[j]);
      out.deg_t_cap = mpq_class(P) * (mpq_class(inv.hV_t) + mpq_class(inv.degV) * sum);
      out.deg_t_cap.canonicalize();
      if (dim_c > 0) {
        std::vector<mpq_class> w(D, 0);
        for (int k = R; k < D; ++k) w[k] = 1;
        reg.half_spaces.push_back(exact_space("t-degree", w, out.deg_t_cap));
      }
      break;
    }
    case PerronVariant::rational_Z: {
      deg_caps();
      const auto& h = need_h(inv);
      double sum = 0;
      for (int j = 0; j < R; ++j) sum += h[j] / inv.d[j];
      out.mahler_cap = dbl(P) * (inv.hV + dbl(inv.degV) * sum);
      break;
    }
  }
  return out;
}

PerronVariant perron_variant_from_string(const std::string& s) {
  if (s == "param") return PerronVariant::param;
  if (s == "Z") return PerronVariant::Z;
  if (s == "Z_nonfinite") return PerronVariant::Z_nonfinite;
  if (s == "rational_param") return PerronVariant::rational_param;
  if (s == "rational_Z") return PerronVariant::rational_Z;
  throw BoundInputError("unknown Perron variant '" + s + "'");
}

std::string to_string(PerronVariant v) {
  switch (v) {
    case PerronVariant::param: return "param";
    case PerronVariant::Z: return "Z";
    case PerronVariant::Z_nonfinite: return "Z_nonfinite";
    case PerronVariant::rational_param: return "rational_param";
    case PerronVariant::rational_Z: return "rational_Z";
  }
  return "?";
}

}  // namespace mh
