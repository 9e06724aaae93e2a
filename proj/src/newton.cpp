#include "multiheight/newton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "multiheight/measures.hpp"

namespace mh {

namespace {

struct Layout {
  std::vector<int> yvars;
  std::vector<int> tvars;
};

Layout layout_of(const Spec& s, const std::string& ygroup) {
  Layout l;
  l.yvars = s->vars_of_group(s->group_index(ygroup));
  for (int g : s->groups_of_kind(GroupKind::parameter))
    for (int v : s->vars_of_group(g)) l.tvars.push_back(v);
  return l;
}

using IVec = std::vector<long long>;

long long det_ll(std::vector<IVec> m) {
  // Exact integer determinant by cofactor expansion; size <= 3 here.
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  long long acc = 0;
  for (int c = 0; c < n; ++c) {
    std::vector<IVec> sub;
    for (int r = 1; r < n; ++r) {
      IVec row;
      for (int k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(row);
    }
    long long t = m[0][c] * det_ll(sub);
    acc += (c % 2 == 0) ? t : -t;
  }
  return acc;
}

// Normal of the hyperplane through k points in Z^k (generalized cross
// product of the difference vectors); zero if they are dependent.
IVec hyperplane_normal(const std::vector<const IVec*>& pts) {
  int k = static_cast<int>(pts[0]->size());
  std::vector<IVec> diff;
  for (int i = 1; i < k; ++i) {
    IVec d(k);
    for (int c = 0; c < k; ++c) d[c] = (*pts[i])[c] - (*pts[0])[c];
    diff.push_back(d);
  }
  IVec nrm(k);
  for (int c = 0; c < k; ++c) {
    std::vector<IVec> minor;
    for (const auto& row : diff) {
      IVec r;
      for (int j = 0; j < k; ++j)
        if (j != c) r.push_back(row[j]);
      minor.push_back(r);
    }
    long long v = det_ll(minor);
    nrm[c] = (c % 2 == 0) ? v : -v;
  }
  long long g = 0;
  for (long long x : nrm) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1)
    for (auto& x : nrm) x /= g;
  return nrm;
}

long long dot(const IVec& a, const IVec& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int rank_of(std::vector<std::vector<mpq_class>> m, std::vector<int>* pivots = nullptr) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

// Solves the square system A x = b; false if singular.
bool solve(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b, std::vector<mpq_class>& x) {
  int n = static_cast<int>(A.size());
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (A[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (int i = 0; i < n; ++i) {
      if (i == c || A[i][c] == 0) continue;
      mpq_class f = A[i][c] / A[c][c];
      for (int j = c; j < n; ++j) A[i][j] -= f * A[c][j];
      b[i] -= f * b[c];
    }
  }
  x.assign(n, 0);
  for (int i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<QPoint> support_points(const MPoly& E, const std::string& ygroup) {
  Layout l = layout_of(E.spec(), ygroup);
  std::set<QPoint> pts;
  for (const auto& [e, c] : E.terms()) {
    QPoint p;
    for (int v : l.yvars) p.push_back(e[v]);
    for (int v : l.tvars) p.push_back(e[v]);
    pts.insert(p);
  }
  return {pts.begin(), pts.end()};
}

NewtonCheck newton_check(const MPoly& E, const NewtonRegion& region, bool extended, const std::string& ygroup) {
  if (E.is_zero()) throw Error("newton_check needs a nonzero polynomial");
  Layout l = layout_of(E.spec(), ygroup);
  if (static_cast<int>(l.yvars.size()) != region.dim_a || static_cast<int>(l.tvars.size()) != region.dim_c)
    throw Error("region dimensions do not match the polynomial");
  if (extended && !region.has_height) throw Error("extended check needs a region with a height ordinate");

  std::map<std::vector<int>, std::vector<Term>> by_a;
  for (const auto& [e, c] : E.terms()) {
    std::vector<int> a;
    for (int v : l.yvars) a.push_back(e[v]);
    by_a[a].push_back({e, c});
  }
  std::map<std::vector<int>, double> height;
  if (extended)
    for (const auto& [a, ts] : by_a) height[a] = height_inf(MPoly::from_terms(E.spec(), ts).as_integer());

  NewtonCheck out;
  int D = region.dim();
  for (const auto& [e, c] : E.terms()) {
    std::vector<int> a;
    std::vector<mpq_class> pq;
    std::vector<double> pr;
    for (int v : l.yvars) a.push_back(e[v]);
    for (int v : l.yvars) pq.push_back(e[v]);
    for (int v : l.tvars) pq.push_back(e[v]);
    for (const auto& x : pq) pr.push_back(x.get_d());
    if (region.has_height) {
      pq.push_back(0);
      pr.push_back(extended ? height[a] : 0.0);
    }
    ++out.points;
    for (const auto& hs : region.half_spaces) {
      bool uses_height = region.has_height &&
                         ((hs.exact && hs.w[D - 1] != 0) || (!hs.exact && hs.w_real[D - 1] != 0.0));
      if (uses_height && !extended) continue;
      if (hs.exact) {
        mpq_class lhs = 0;
        for (int i = 0; i < D; ++i) lhs += hs.w[i] * pq[i];
        if (lhs > hs.beta) out.violations.push_back({pr, hs.label, lhs.get_d(), hs.beta.get_d()});
      } else {
        double lhs = 0;
        for (int i = 0; i < D; ++i) lhs += hs.w_real[i] * pr[i];
        if (!real_leq(lhs, hs.beta_real)) out.violations.push_back({pr, hs.label, lhs, hs.beta_real});
      }
    }
  }
  out.contained = out.violations.empty();
  return out;
}

std::vector<QPoint> hull_vertices(const std::vector<QPoint>& input) {
  std::set<QPoint> uniq(input.begin(), input.end());
  std::vector<QPoint> pts(uniq.begin(), uniq.end());
  if (pts.size() <= 1) return pts;
  int D = static_cast<int>(pts[0].size());
  if (D > 4) throw Error("hull_vertices supports ambient dimension <= 4");
  for (const auto& p : pts)
    for (const auto& x : p)
      if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw Error("hull_vertices needs small integer points");

  // Project onto pivot coordinates of the affine span.
  std::vector<std::vector<mpq_class>> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<mpq_class> d(D);
    for (int c = 0; c < D; ++c) d[c] = pts[i][c] - pts[0][c];
    diffs.push_back(d);
  }
  // Pivot columns of the row space: rank on the transposed layout.
  std::vector<int> piv;
  rank_of(diffs, &piv);
  int k = static_cast<int>(piv.size());
  std::vector<IVec> P;
  for (const auto& p : pts) {
    IVec q;
    for (int c : piv) q.push_back(p[c].get_num().get_si());
    P.push_back(q);
  }
  int N = static_cast<int>(P.size());
  std::vector<bool> is_vertex(N, false);
  if (k == 0) {
    is_vertex[0] = true;
  } else if (k == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < N; ++i) {
      if (P[i][0] < P[lo][0]) lo = i;
      if (P[i][0] > P[hi][0]) hi = i;
    }
    is_vertex[lo] = is_vertex[hi] = true;
  } else {
    std::set<std::pair<IVec, long long>> facets;
    for_each_subset(N, k, [&](const std::vector<int>& idx) {
      std::vector<const IVec*> sel;
      for (int i : idx) sel.push_back(&P[i]);
      IVec nrm = hyperplane_normal(sel);
      bool zero = std::all_of(nrm.begin(), nrm.end(), [](long long x) { return x == 0; });
      if (zero) return;
      long long b = dot(nrm, P[idx[0]]);
      bool le = true, ge = true;
      for (const auto& q : P) {
        long long v = dot(nrm, q);
        if (v > b) le = false;
        if (v < b) ge = false;
        if (!le && !ge) return;
      }
      if (!le) {
        for (auto& x : nrm) x = -x;
        b = -b;
      }
      facets.insert({nrm, b});
    });
    for (int i = 0; i < N; ++i) {
      std::vector<std::vector<mpq_class>> normals;
      for (const auto& [nrm, b] : facets)
        if (dot(nrm, P[i]) == b) {
          std::vector<mpq_class> row;
          for (long long x : nrm) row.push_back(mpq_class(mpz_class(static_cast<long>(x))));
          normals.push_back(row);
        }
      if (rank_of(normals) == k) is_vertex[i] = true;
    }
  }
  std::vector<QPoint> out;
  for (int i = 0; i < N; ++i)
    if (is_vertex[i]) out.push_back(pts[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QPoint> region_vertices(const NewtonRegion& region) {
  int D = region.dim_a + region.dim_c;
  if (D > 4) throw Error("region_vertices supports dimension <= 4");
  std::vector<std::vector<mpq_class>> W;
  std::vector<mpq_class> B;
  for (const auto& hs : region.half_spaces) {
    if (!hs.exact) continue;
    bool uses_height = region.has_height && hs.w[region.dim() - 1] != 0;
    if (uses_height) continue;
    W.emplace_back(hs.w.begin(), hs.w.begin() + D);
    B.push_back(hs.beta);
  }
  for (int i = 0; i < D; ++i) {
    std::vector<mpq_class> w(D, 0);
    w[i] = -1;
    W.push_back(w);
    B.push_back(0);
  }
  int M = static_cast<int>(W.size());
  std::set<QPoint> verts;
  for_each_subset(M, D, [&](const std::vector<int>& idx) {
    std::vector<std::vector<mpq_class>> A;
    std::vector<mpq_class> b;
    for (int i : idx) {
      A.push_back(W[i]);
      b.push_back(B[i]);
    }
    std::vector<mpq_class> x;
    if (!solve(A, b, x)) return;
    for (int j = 0; j < M; ++j) {
      mpq_class lhs = 0;
      for (int c = 0; c < D; ++c) lhs += W[j][c] * x[c];
      if (lhs > B[j]) return;
    }
    verts.insert(x);
  });
  return {verts.begin(), verts.end()};
}

bool newton_polytope_equals_region(const MPoly& E, const NewtonRegion& region, const std::string& ygroup) {
  return hull_vertices(support_points(E, ygroup)) == region_vertices(region);
}

}  // namespace mh
