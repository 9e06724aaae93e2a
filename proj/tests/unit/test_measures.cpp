#include <cmath>
#include <random>

#include "doctest.h"
#include "multiheight/measures.hpp"
#include "test_util.hpp"

using namespace mh;
using mhtest::P;

TEST_CASE("height_inf") {
  Spec s = mhtest::affine("x", 1);
  CHECK(height_inf(P(s, "3*x^2 - 5")) == doctest::Approx(std::log(5.0)));
  CHECK(height_inf(MPoly(s)) == 0.0);
  CHECK(height_inf(P(s, "x + 1")) == 0.0);
  CHECK_THROWS(height_inf(P(s, "x/2")));
}

TEST_CASE("height_t") {
  Spec s = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 1, GroupKind::affine, {}}});
  CHECK(height_t(P(s, "(t^2 + 1)*x + t^3"), "t") == 3);
  CHECK(height_t(P(s, "7*x^4 - x"), "t") == 0);
  CHECK_THROWS(height_t(P(s, "x"), "s"));
}

TEST_CASE("k[t] heights: additivity of products, sums bounded by the max") {
  Spec s = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 2, GroupKind::affine, {}}});
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 4, 4, 5);
    MPoly g = mhtest::random_poly(rng, s, 4, 4, 5);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(height_t(f * g, "t") == height_t(f, "t") + height_t(g, "t"));
    if (!(f + g).is_zero()) CHECK(height_t(f + g, "t") <= std::max(height_t(f, "t"), height_t(g, "t")));
  }
}

TEST_CASE("norms") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  CHECK(l1_norm_log(P(s, "x - 2")) == doctest::Approx(std::log(3.0)));
  CHECK(sup_norm_upper_log(P(s, "7*x^2*y")) == doctest::Approx(std::log(7.0)));
}

TEST_CASE("norm sandwich on random polynomials") {
  const int n = 3;
  Spec s = mhtest::affine("x", n);
  std::mt19937_64 rng(7);
  for (int it = 0; it < 300; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 6, 4, 50);
    if (f.is_zero()) continue;
    double hi = height_inf(f), sup = sup_norm_upper_log(f);
    CHECK(real_leq(hi, sup));
    CHECK(real_leq(sup, hi + std::log(n + 1.0) * f.total_degree()));
  }
}

TEST_CASE("Mahler measure of linear factors") {
  Spec s = mhtest::affine("x", 1);
  auto a = mahler_estimate(P(s, "x - 2"));
  CHECK(std::fabs(a.estimate - std::log(2.0)) <= std::max(a.radius, 1e-12));
  auto b = mahler_estimate(P(s, "x + 1"));
  CHECK(std::fabs(b.estimate) <= std::max(b.radius, 1e-12));
  auto c = mahler_estimate(P(s, "3*x^2 - 12"));  // 3 (x-2)(x+2)
  CHECK(c.estimate == doctest::Approx(std::log(12.0)).epsilon(1e-9));
}

TEST_CASE("Mahler measure by quadrature on a product of separated factors") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  auto e = mahler_estimate(P(s, "(2*x + 1)*(y - 3)"), MahlerMethod::torus_quadrature, 1e-7);
  CHECK(e.radius <= 1e-7);
  CHECK(std::fabs(e.estimate - std::log(6.0)) <= e.radius + 1e-9);
}

TEST_CASE("Mahler band and upper bound on random univariate polynomials") {
  Spec s = mhtest::affine("x", 1);
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 5, 6, 30);
    if (f.total_degree() < 1) continue;
    auto m = mahler_estimate(f);
    double h = height_inf(f), band = std::log(2.0) * f.total_degree();
    CHECK(m.estimate >= h - band - m.radius - 1e-9);
    CHECK(m.estimate <= h + band + m.radius + 1e-9);
    CHECK(m.estimate - m.radius <= sup_norm_upper_log(f) + 1e-9);
  }
}

TEST_CASE("heights of sums and products over Z") {
  const int n = 2;
  Spec s = mhtest::affine("x", n);
  std::mt19937_64 rng(19);
  for (int it = 0; it < 200; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 4, 3, 40);
    MPoly g = mhtest::random_poly(rng, s, 4, 3, 40);
    MPoly k = mhtest::random_poly(rng, s, 3, 2, 40);
    if (f.is_zero() || g.is_zero() || k.is_zero()) continue;
    CHECK(real_leq(height_inf(f + g + k), std::max({height_inf(f), height_inf(g), height_inf(k)}) + std::log(3.0)));
    double rhs = height_inf(f) + height_inf(g) + height_inf(k) + std::log(n + 1.0) * (g.total_degree() + k.total_degree());
    CHECK(real_leq(height_inf(f * g * k), rhs));
  }
}

TEST_CASE("Philippon correction") {
  CHECK(philippon_correction({1}, {1}) == doctest::Approx(0.5));
  CHECK(philippon_correction({2}, {1}) == doctest::Approx(0.75));
  CHECK(philippon_correction({3, 2}, {0, 0}) == 0.0);
  CHECK(philippon_correction_exact({2, 1}, {2, 3}) == mpq_class(3, 1));
  std::mt19937_64 rng(29);
  for (int it = 0; it < 100; ++it) {
    std::vector<int> dims = {int(rng() % 5), int(rng() % 5)}, degs = {int(rng() % 7), int(rng() % 7)};
    double c = philippon_correction(dims, degs);
    double cap = std::log(dims[0] + 1.0) * degs[0] + std::log(dims[1] + 1.0) * degs[1];
    CHECK(c >= 0.0);
    CHECK(real_leq(c, cap));
  }
}

TEST_CASE("canonical heights of points") {
  auto h = canonical_point_height(std::vector<std::vector<mpz_class>>{{1, 2}, {3, 5}});
  CHECK(h[0].real == doctest::Approx(std::log(2.0)));
  CHECK(h[1].real == doctest::Approx(std::log(5.0)));
  auto g = canonical_point_height(std::vector<std::vector<mpz_class>>{{2, 4}});
  CHECK(g[0].real == doctest::Approx(std::log(2.0)));
  CHECK_THROWS(canonical_point_height(std::vector<std::vector<mpz_class>>{{0, 0}}));

  Spec t = mhtest::groups({{"t", 1, GroupKind::parameter, {}}});
  auto k = canonical_point_height(std::vector<std::vector<MPoly>>{{P(t, "1"), P(t, "t")}});
  REQUIRE(k[0].is_exact());
  CHECK(k[0].exact == 1);
  auto k2 = canonical_point_height(std::vector<std::vector<MPoly>>{{P(t, "t^2 - 1"), P(t, "t^3 - t")}});
  CHECK(k2[0].exact == 1);  // (1 : t) after removing t^2 - 1
}

TEST_CASE("divisor heights") {
  Spec s = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 3, GroupKind::projective, {}}});
  auto e = divisor_height(P(s, "(t+1)*x_1^3 + x_1^2*x_0 - x_2^2*x_0"), DivisorMode::ff_t);
  REQUIRE(e.value.is_exact());
  CHECK(e.value.exact == 1);

  Spec p = mhtest::groups({{"x", 2, GroupKind::projective, {}}});
  CHECK(std::fabs(divisor_height(P(p, "x_0"), DivisorMode::canonical_Z).value.real) <= 1e-9);
  auto l = divisor_height(P(p, "x_1 - 2*x_0"), DivisorMode::canonical_Z);
  CHECK(std::fabs(l.value.real - std::log(2.0)) <= l.radius + 1e-9);
  CHECK_THROWS(divisor_height(P(p, "2*x_1 - 4*x_0"), DivisorMode::canonical_Z));
  CHECK_THROWS(divisor_height(P(p, "x_1 - x_0^2"), DivisorMode::canonical_Z));
}
