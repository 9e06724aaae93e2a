#include <random>

#include "doctest.h"
#include "multiheight/polycore.hpp"
#include "test_util.hpp"

using namespace mh;
using mhtest::P;

TEST_CASE("add: cancellation, identity and zero result") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  CHECK(mp_add(P(s, "x + 1"), P(s, "x - 1")) == P(s, "2*x"));
  MPoly f = P(s, "3*x^2*y - y + 7");
  CHECK(mp_add(f, MPoly(s)) == f);
  MPoly z = mp_add(P(s, "3*x^2*y"), P(s, "-3*x^2*y"));
  CHECK(z.is_zero());
  CHECK(z.terms().empty());
}

TEST_CASE("mul: small products") {
  Spec s = mhtest::affine("x", 1);
  CHECK(mp_mul(P(s, "x + 1"), P(s, "x - 1")) == P(s, "x^2 - 1"));
  MPoly f = P(s, "4*x^3 - x + 9");
  CHECK(mp_mul(f, MPoly::constant(s, 1)) == f);
  CHECK(mp_mul(P(s, "2*x + 3"), P(s, "5*x + 7")) == P(s, "10*x^2 + 29*x + 21"));
}

TEST_CASE("mixing specs is rejected") {
  Spec a = mhtest::affine("x", 1), b = mhtest::affine("y", 1);
  CHECK_THROWS_AS(mp_add(P(a, "x"), P(b, "y")), SpecMismatch);
  CHECK_THROWS_AS(mp_mul(P(a, "x"), P(b, "y")), SpecMismatch);
}

TEST_CASE("partial degrees on the curve of the eliminant example") {
  Spec s = mhtest::groups({{"x1", 2, GroupKind::projective, {}}, {"x2", 2, GroupKind::projective, {}}});
  MPoly f = P(s, "x1_0^2*x2_1 - x1_1^2*x2_0");
  CHECK(partial_degree(f, "x1") == 2);
  CHECK(partial_degree(f, "x2") == 1);
  CHECK(partial_degree(MPoly::constant(s, 5), "x2") == 0);
  CHECK_FALSE(partial_degree(MPoly(s), "x1").has_value());
  CHECK_THROWS(partial_degree(f, "nope"));
}

TEST_CASE("multihomogeneity") {
  Spec s = mhtest::groups({{"x1", 2, GroupKind::projective, {}}, {"x2", 2, GroupKind::projective, {}}});
  auto md = is_multihomogeneous(P(s, "x1_0*x2_0 + x1_1*x2_1"));
  REQUIRE(md);
  CHECK(md->d == std::vector<int>{1, 1});
  CHECK_FALSE(md->zero);
  CHECK_FALSE(is_multihomogeneous(P(s, "x1_0 + x1_0^2")));
  auto z = is_multihomogeneous(MPoly(s));
  REQUIRE(z);
  CHECK(z->zero);
  CHECK(z->d == std::vector<int>{0, 0});
}

TEST_CASE("substitute") {
  Spec ys = mhtest::groups({{"y", 2, GroupKind::auxiliary, {}}});
  Spec xs = mhtest::affine("x", 1);
  MPoly f = P(ys, "y_1^2");
  CHECK(substitute(f, std::map<std::string, MPoly>{{"y_1", P(xs, "x + 1")}}) == P(xs, "x^2 + 2*x + 1"));

  MPoly g = P(ys, "3*y_1*y_2 - y_2^3");
  std::map<std::string, MPoly> id = {{"y_1", P(ys, "y_1")}, {"y_2", P(ys, "y_2")}};
  CHECK(substitute(g, id) == g);

  // E(q, z) vanishes for the worked A^1 certificate.
  Spec es = mhtest::groups({{"y", 2, GroupKind::auxiliary, {}}, {"z", 1, GroupKind::auxiliary, {}}});
  Spec ts = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"z", 1, GroupKind::auxiliary, {}}});
  MPoly E = P(es, "z^2 + (1 + y_2 - y_1)*z + (y_2 - 2*y_1)");
  MPoly r = substitute(E, std::map<std::string, MPoly>{{"y_1", P(ts, "z*x + x")}, {"y_2", P(ts, "z*(x - 1) + 2*x")}}, ts);
  CHECK(r.is_zero());
}

TEST_CASE("content and primitive part") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  auto a = content_and_primitive(P(s, "6*x + 4*y"));
  CHECK(a.content == 2);
  CHECK(a.primitive == P(s, "3*x + 2*y"));
  auto b = content_and_primitive(P(s, "-5"));
  CHECK(b.content == 5);
  CHECK(b.primitive == P(s, "1"));
  CHECK(primitive_part(P(s, "-2*x^2 + 4/3*y")) == P(s, "3*x^2 - 2*y"));
}

TEST_CASE("Gauss content multiplicativity on random pairs") {
  Spec s = mhtest::groups({{"x", 2, GroupKind::affine, {}}});
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 4, 3, 20);
    MPoly g = mhtest::random_poly(rng, s, 4, 3, 20);
    if (f.is_zero() || g.is_zero()) continue;
    auto cf = content_and_primitive(f), cg = content_and_primitive(g), cfg = content_and_primitive(f * g);
    CHECK(cfg.content == cf.content * cg.content);
  }
}

TEST_CASE("coefficient extraction") {
  Spec s = mhtest::groups({{"u", 1, GroupKind::parameter, {"u1"}}, {"x", 1, GroupKind::affine, {}},
                           {"y", 1, GroupKind::affine, {}}});
  MPoly f = P(s, "u1*x + u1^2*y + 3");
  Spec rest = spec_without(s, {"u"});
  CHECK(coefficient_extract(f, "u", {1}) == P(rest, "x"));
  CHECK(coefficient_extract(f, "u", {0}) == P(rest, "3"));
  CHECK(coefficient_extract(f, "u", {2}) == P(rest, "y"));
  CHECK(coefficient_extract(f, "u", {5}).is_zero());
  CHECK_THROWS(coefficient_extract(f, "w", {1}));
}

TEST_CASE("ring axioms and degree additivity on random triples") {
  Spec s = mhtest::groups({{"x", 2, GroupKind::affine, {}}, {"t", 1, GroupKind::parameter, {}}});
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    MPoly a = mhtest::random_poly(rng, s, 4, 3, 9);
    MPoly b = mhtest::random_poly(rng, s, 4, 3, 9);
    MPoly c = mhtest::random_poly(rng, s, 3, 2, 9);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    if (!a.is_zero() && !b.is_zero()) {
      for (const char* g : {"x", "t"}) CHECK(*partial_degree(a * b, g) == *partial_degree(a, g) + *partial_degree(b, g));
    }
  }
}

TEST_CASE("substitution composes") {
  Spec s = mhtest::groups({{"x", 2, GroupKind::affine, {}}});
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    MPoly f = mhtest::random_poly(rng, s, 3, 2, 5);
    std::map<int, MPoly> sigma = {{0, mhtest::random_poly(rng, s, 2, 2, 3)}, {1, mhtest::random_poly(rng, s, 2, 1, 3)}};
    std::map<int, MPoly> tau = {{0, mhtest::random_poly(rng, s, 2, 1, 3)}, {1, mhtest::random_poly(rng, s, 2, 2, 3)}};
    std::map<int, MPoly> composed;
    for (auto& [v, p] : sigma) composed[v] = substitute(p, tau, s);
    CHECK(substitute(substitute(f, sigma, s), tau, s) == substitute(f, composed, s));
  }
}

TEST_CASE("gcd, exact division and squarefree part") {
  Spec s = mhtest::groups({{"x", 2, GroupKind::affine, {}}});
  std::mt19937_64 rng(23);
  for (int it = 0; it < 40; ++it) {
    MPoly a = mhtest::random_poly(rng, s, 3, 2, 6);
    MPoly b = mhtest::random_poly(rng, s, 3, 2, 6);
    MPoly c = mhtest::random_poly(rng, s, 2, 2, 6);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    MPoly g = mp_gcd(a * c, b * c);
    CHECK(try_divide(g, primitive_part(c)).has_value());
    CHECK(try_divide(a * c, g).has_value());
    CHECK(divexact(a * c, c) == a);
  }
  MPoly f = P(s, "(x_1 + 1)^3*(x_1 - x_2)^2*(x_2 + 2)");
  CHECK(squarefree_part(f) == primitive_part(P(s, "(x_1 + 1)*(x_1 - x_2)*(x_2 + 2)")));
  CHECK_THROWS(divexact(P(s, "x_1 + 1"), P(s, "x_2")));
}

TEST_CASE("canonical printing is graded-lex descending") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  CHECK(P(s, "1 + y + x + x*y + y^2 + x^2").to_string() == "x^2 + x*y + y^2 + x + y + 1");
  CHECK(P(s, "-1/2*x + 3").to_string() == "-1/2*x + 3");
  CHECK(MPoly(s).to_string() == "0");
}

TEST_CASE("evaluate and weight splitting") {
  Spec s = mhtest::groups({{"x", 1, GroupKind::affine, {}}, {"y", 1, GroupKind::affine, {}}});
  MPoly f = P(s, "x^2*y - 3*y + 1");
  CHECK(evaluate(f, {mpq_class(2), mpq_class(1, 3)}) == mpq_class(1, 3) * 4 - 1 + 1);
  auto parts = split_by_weight(f, {1, 0});
  CHECK(parts.size() == 2);
  CHECK(parts[2] == P(s, "x^2*y"));
  CHECK(parts[0] == P(s, "-3*y + 1"));
}
