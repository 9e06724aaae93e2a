#include <cmath>
#include <random>

#include "doctest.h"
#include "multiheight/bounds.hpp"
#include "multiheight/measures.hpp"
#include "multiheight/newton.hpp"
#include "test_util.hpp"

using namespace mh;
using mhtest::P;

namespace {

Invariants affine_space(std::vector<int> d, std::vector<double> h) {
  Invariants inv;
  inv.n = static_cast<int>(d.size()) - 1;
  inv.r = inv.n;
  inv.d = std::move(d);
  inv.h = std::move(h);
  return inv;
}

// sum_l (prod_{j != l} d_j) x_l
template <class T>
T cross_sum(const std::vector<int>& d, const std::vector<T>& x) {
  T acc = 0;
  for (size_t l = 0; l < d.size(); ++l) {
    T p = x[l];
    for (size_t j = 0; j < d.size(); ++j)
      if (j != l) p *= d[j];
    acc += p;
  }
  return acc;
}

Invariants random_invariants(std::mt19937_64& rng) {
  Invariants inv;
  inv.n = 1 + rng() % 4;
  inv.r = rng() % (inv.n + 1);
  int s = 1 + rng() % (inv.r + 1);
  for (int j = 0; j < s; ++j) {
    inv.d.push_back(1 + rng() % 5);
    inv.h.push_back((rng() % 1000) / 100.0);
    inv.ht.push_back(rng() % 6);
    inv.supp.push_back(1 + rng() % 9);
  }
  std::sort(inv.d.rbegin(), inv.d.rend());
  inv.degV = 1 + rng() % 6;
  inv.hV = (rng() % 500) / 100.0;
  inv.hV_t = rng() % 5;
  return inv;
}

}  // namespace

TEST_CASE("weak_Z evaluations") {
  Invariants inv = affine_space({2, 3}, {1, 2});
  inv.n = 2;
  inv.r = 2;
  ZBound b = weak_Z(inv);
  CHECK(b.deg == 6);
  CHECK(b.ht == doctest::Approx(7 + 96 * std::log(5.0)).epsilon(1e-14));

  Invariants one;
  one.n = 3;
  one.r = 1;
  one.d = {1};
  one.h = {0};
  one.degV = 4;
  one.hV = 2.5;
  ZBound o = weak_Z(one);
  CHECK(o.deg == 4);
  CHECK(o.ht == doctest::Approx(2.5 + 4 * 12 * std::log(6.0)).epsilon(1e-14));

  Invariants bad = affine_space({2, 2, 2, 2}, {0, 0, 0, 0});
  bad.r = 2;
  CHECK_THROWS_AS(weak_Z(bad), BoundInputError);
  CHECK_THROWS_AS(weak_ff(bad), BoundInputError);
}

TEST_CASE("weak bounds specialize to the affine-space displays") {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + rng() % 5;
    std::vector<int> d;
    std::vector<double> h;
    std::vector<long> ht;
    for (int j = 0; j <= n; ++j) {
      d.push_back(1 + rng() % 6);
      h.push_back((rng() % 10000) / 100.0);
      ht.push_back(rng() % 9);
    }
    Invariants inv = affine_space(d, h);
    inv.ht = ht;
    double prod = 1;
    for (int x : d) prod *= x;
    double expect = cross_sum(d, h) + (4.0 * n + 8) * std::log(n + 3.0) * prod;
    CHECK(std::fabs(weak_Z(inv).ht - expect) <= 1e-12 * std::max(1.0, expect));
    std::vector<mpq_class> htq(ht.begin(), ht.end());
    CHECK(weak_ff(inv).deg_t == cross_sum(d, htq));
  }
}

TEST_CASE("weak_Z_groups") {
  Invariants inv = affine_space({3, 2}, {1.5, 0.5});
  inv.n = 2;
  inv.r = 2;
  inv.supp = {4, 2};
  ZBound g = weak_Z_groups(inv);
  CHECK(g.deg == weak_Z(inv).deg);
  double expect = 6 * (1.5 / 3 + std::log(4.0) / 3 + 0.5 / 2 + std::log(2.0) / 2 + 13 * std::log(5.0));
  CHECK(g.ht == doctest::Approx(expect).epsilon(1e-14));
  CHECK(g.deg_t.empty());

  inv.p = {2};
  inv.delta = {{1, 2}};
  ZBound t = weak_Z_groups(inv);
  REQUIRE(t.deg_t.size() == 1);
  CHECK(t.deg_t[0] == mpq_class(6) * (mpq_class(1, 3) + 1));
  CHECK(t.ht == doctest::Approx(expect + 6 * 2 * std::log(3.0) * (1.0 / 3 + 2.0 / 2)).epsilon(1e-14));

  // Height of resultant cofactors.
  Invariants res = affine_space({2, 3, 4}, {0, 0, 0});
  res.degV = 5;
  CHECK(resultant_cofactor_height(res) == doctest::Approx(24 * (0 + 22 * std::log(5.0) * 5)));
}

TEST_CASE("weak_ff and group versions") {
  Invariants inv;
  inv.n = 2;
  inv.r = 1;
  inv.d = {1, 2};
  inv.ht = {1, 1};
  inv.degV = 3;
  inv.hV_t = 1;
  FFBound b = weak_ff(inv);
  CHECK(b.deg == 6);
  CHECK(b.deg_t == 2 * (1 + 3 * mpq_class(3, 2)));

  inv.p = {1, 1};
  inv.delta = {{1, 1}, {0, 2}};
  inv.hV_groups = {1, 0};
  FFBound g = weak_ff_groups(inv);
  REQUIRE(g.deg_t_groups.size() == 2);
  CHECK(g.deg_t_groups[0] == b.deg_t);
  CHECK(g.deg_t_groups[1] == 2 * (0 + 3 * mpq_class(1)));

  // Masser parametric tightness: d_1 h.
  Invariants m;
  m.n = 2;
  m.r = 2;
  m.d = {4, 3};
  m.ht = {0, 5};
  CHECK(weak_ff(m).deg_t == 4 * 5);
}

TEST_CASE("strong bounds") {
  Invariants inv = affine_space({3, 2}, {1, 2});
  inv.n = 2;
  inv.r = 2;
  inv.ht = {1, 2};
  inv.degV = 2;
  inv.d0 = 2;
  inv.h0 = 0.5;
  inv.h0_t = 3;
  StrongZBound z = strong_Z(inv);
  CHECK(z.mu == 2 * 6 * 2);
  CHECK(z.deg == 4 * 2 * 6 * 2);
  double c = 29 * std::log(6.0);
  CHECK(z.ht == doctest::Approx(2 * 2 * 6 * (2 * (3 * 0.5 / 4 + 2.0 / 3 + 2.0 / 2 + c))).epsilon(1e-14));

  StrongFFBound f = strong_ff(inv);
  CHECK(f.mu == 24);
  CHECK(f.deg_t == 2 * 12 * (0 + 2 * (mpq_class(9, 4) + mpq_class(2, 3) + 1)));

  Invariants unsorted = inv;
  unsorted.d = {2, 3};
  CHECK_THROWS_AS(strong_Z(unsorted), BoundInputError);

  // g = 1 keeps the weak degree up to the constant factor 4.
  Invariants w = affine_space({2, 2}, {0, 0});
  w.ht = {0, 0};
  CHECK(strong_ff(w).deg == 4 * weak_ff(w).deg);
}

TEST_CASE("more polynomials than the dimension") {
  Invariants inv;
  inv.n = 3;
  inv.r = 1;
  inv.d = {4, 3, 3, 2};
  inv.h = {1, 3, 2, 0.5};
  inv.ht = {2, 1, 1, 1};
  inv.degV = 2;
  inv.hV = 0.25;
  inv.hV_t = 1;
  MixedSBound z = mixed_S(inv, BoundKind::Z);
  CHECK(z.deg == 4 * 2 * 2);
  double c = 15 * std::log(6.0) + 3 * std::log(3.0);
  CHECK(z.ht == doctest::Approx(8 * (0.25 + 2 * (0.5 / 2 + 3.0 / 4 + c))).epsilon(1e-14));
  MixedSBound f = mixed_S(inv, BoundKind::ff);
  CHECK(f.deg_t == 8 * (1 + 2 * (mpq_class(1, 2) + mpq_class(2, 4))));

  // Up to r+1 polynomials, the degree is the weak one.
  Invariants small = affine_space({3, 2}, {1, 1});
  small.ht = {1, 1};
  CHECK(mixed_S(small, BoundKind::ff).deg == weak_ff(small).deg);
}

TEST_CASE("bounds are monotone in their inputs") {
  std::mt19937_64 rng(79);
  for (int it = 0; it < 200; ++it) {
    Invariants a = random_invariants(rng);
    Invariants b = a;
    switch (rng() % 4) {
      case 0: b.d[rng() % b.d.size()] += 1; break;
      case 1: b.h[rng() % b.h.size()] += 0.7; b.ht[rng() % b.ht.size()] += 1; break;
      case 2: b.degV += 1; break;
      default: b.hV += 0.3; b.hV_t += 1; break;
    }
    std::sort(b.d.rbegin(), b.d.rend());
    CHECK(weak_Z(a).deg <= weak_Z(b).deg);
    CHECK(real_leq(weak_Z(a).ht, weak_Z(b).ht));
    CHECK(real_leq(weak_Z_groups(a).ht, weak_Z_groups(b).ht));
    CHECK(weak_ff(a).deg_t <= weak_ff(b).deg_t);
    CHECK(strong_ff(a).deg_t <= strong_ff(b).deg_t);
    CHECK(real_leq(strong_Z(a).ht, strong_Z(b).ht));
    CHECK(real_leq(mixed_S(a, BoundKind::Z).ht, mixed_S(b, BoundKind::Z).ht));
  }
}

TEST_CASE("Perron region of the elliptic example") {
  Invariants inv;
  inv.n = 2;
  inv.r = 1;
  inv.d = {1, 2};
  inv.ht = {1, 1};
  inv.p = {1};
  inv.degV = 3;
  inv.hV_t = 1;
  PerronRegion pr = perron_region(inv, PerronVariant::param);
  REQUIRE(pr.region.half_spaces.size() == 2);
  CHECK(pr.region.half_spaces[0].w == std::vector<mpq_class>{1, 2, 0});
  CHECK(pr.region.half_spaces[0].beta == 6);
  CHECK(pr.region.half_spaces[1].w == std::vector<mpq_class>{1, 1, 1});
  CHECK(pr.region.half_spaces[1].beta == 11);
  std::vector<QPoint> expect = {{0, 0, 0}, {0, 0, 11}, {0, 3, 0}, {0, 3, 8}, {6, 0, 0}, {6, 0, 5}};
  CHECK(region_vertices(pr.region) == expect);
}

TEST_CASE("Perron region on affine space") {
  Invariants inv = affine_space({2, 3}, {0, 0});
  inv.ht = {4, 1};
  inv.p = {1};
  PerronRegion pr = perron_region(inv, PerronVariant::param);
  CHECK(pr.region.half_spaces[0].beta == 6);
  CHECK(pr.region.half_spaces[1].w == std::vector<mpq_class>{4, 1, 1});
  CHECK(pr.region.half_spaces[1].beta == 3 * 4 + 2 * 1);
  CHECK_THROWS_AS(perron_region(affine_space({2}, {0}), PerronVariant::param), BoundInputError);
}

TEST_CASE("rational Perron bound on the H1, H2 example") {
  const int d1 = 2, d2 = 3;
  const double H1 = 5, H2 = 7;
  Invariants inv = affine_space({d1, d2}, {std::log(1 + H1 * std::pow(2.0, d1)), std::log(std::pow(2.0, d2) + H2)});
  PerronRegion pr = perron_region(inv, PerronVariant::rational_Z);
  double cap = d2 * std::log(1 + H1 * std::pow(2.0, d1)) + d1 * std::log(std::pow(2.0, d2) + H2);
  CHECK(pr.mahler_cap == doctest::Approx(cap).epsilon(1e-14));
  CHECK(pr.deg_y_caps == std::vector<mpz_class>{d2, d1});

  Spec y = mhtest::groups({{"y", 2, GroupKind::auxiliary, {}}});
  MPoly E = P(y, "5^3*7^2*y_1^3*y_2^2 - 1");
  auto m = mahler_estimate(E);
  CHECK(m.estimate == doctest::Approx(d1 * std::log(H2) + d2 * std::log(H1)).epsilon(1e-9));
  CHECK(m.estimate - m.radius <= pr.mahler_cap);
  CHECK(perron_variant_from_string(to_string(PerronVariant::rational_Z)) == PerronVariant::rational_Z);
  CHECK_THROWS_AS(perron_variant_from_string("nope"), BoundInputError);
}

TEST_CASE("Newton containment and violations") {
  NewtonRegion reg;
  reg.dim_a = 2;
  reg.half_spaces.push_back(HalfSpace{"weighted degree", true, {1, 2}, 6, {1.0, 2.0}, 6.0});
  Spec y = mhtest::groups({{"y", 2, GroupKind::auxiliary, {}}});
  CHECK(newton_check(P(y, "y_1^2*y_2"), reg, false).contained);
  CHECK(newton_check(P(y, "y_1 + y_2^3"), reg, false).contained);
  NewtonCheck bad = newton_check(P(y, "y_1 + y_2^4"), reg, false);
  CHECK_FALSE(bad.contained);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].label == "weighted degree");
  CHECK(bad.violations[0].lhs == 8.0);
  CHECK(bad.violations[0].rhs == 6.0);
}

TEST_CASE("convex hulls") {
  std::vector<QPoint> sq = {{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}, {1, 0}};
  CHECK(hull_vertices(sq) == std::vector<QPoint>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  std::vector<QPoint> seg = {{0, 0, 0}, {1, 1, 1}, {3, 3, 3}};
  CHECK(hull_vertices(seg) == std::vector<QPoint>{{0, 0, 0}, {3, 3, 3}});
}
