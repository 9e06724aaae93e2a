#include <cmath>
#include <random>

#include "doctest.h"
#include "multiheight/bounds.hpp"
#include "multiheight/measures.hpp"
#include "multiheight/nullcert.hpp"
#include "test_util.hpp"

using namespace mh;
using mhtest::P;

namespace {

// alpha * g^mu - sum g_i f_i modulo I(V), recomputed from scratch.
bool identity_holds(const BezoutCertificate& c) {
  const Spec& s = c.V.spec;
  MPoly lhs = respec(c.alpha, s);
  if (c.g) lhs = lhs * mp_pow(*c.g, c.mu);
  for (size_t i = 0; i < c.fs.size(); ++i) lhs = lhs - c.gs[i] * c.fs[i];
  if (c.V.gens.empty()) return lhs.is_zero();
  return groebner(c.V, MonomialOrder::graded_lex()).normal_form(lhs).is_zero();
}

CertifyOptions fixed_u(std::vector<std::vector<mpz_class>> u) {
  CertifyOptions o;
  o.u = std::move(u);
  return o;
}

}  // namespace

TEST_CASE("linear system of the worked A1 example") {
  Spec s = mhtest::affine("x", 1);
  LinearSystem ls = build_system(Ideal(s, {}), {P(s, "x"), P(s, "x - 1")}, UMode::specialized_u, {{1}, {2}});
  REQUIRE(ls.q.size() == 2);
  CHECK(ls.q[0] == P(ls.qspec, "z*x + x"));
  CHECK(ls.q[1] == P(ls.qspec, "z*(x - 1) + 2*x"));

  LinearSystem sym = build_system(Ideal(s, {}), {P(s, "x"), P(s, "x - 1")}, UMode::symbolic_u);
  CHECK(sym.u.empty());
  CHECK(sym.work->ngroups() == s->ngroups() + 2);
  for (int g = s->ngroups(); g < sym.work->ngroups(); ++g) CHECK(sym.work->group(g).size == 1);

  Spec a2 = mhtest::affine("x", 2);
  LinearSystem one = build_system(Ideal(a2, {}), {P(a2, "x_1")}, UMode::specialized_u, {{1, 0}, {0, 1}, {1, 1}});
  REQUIRE(one.q.size() == 3);
  CHECK(one.q[1] == P(one.qspec, "x_2"));
  CHECK(one.q[2] == P(one.qspec, "x_1 + x_2"));
  CHECK_THROWS(build_system(Ideal(s, {}), {P(s, "x"), P(s, "x - 1"), P(s, "x - 2")}, UMode::specialized_u));
}

TEST_CASE("certificate for (x, x - 1) on A1") {
  Spec s = mhtest::affine("x", 1);
  BezoutCertificate c = certify(Ideal(s, {}), {P(s, "x"), P(s, "x - 1")}, fixed_u({{1}, {2}}));
  CHECK(c.verified);
  CHECK(c.minimal_polynomial_checked);
  CHECK(c.delta == 2);
  CHECK(c.alpha.to_string() == "1");
  REQUIRE(c.gs.size() == 2);
  CHECK(c.gs[0].to_string() == "1");
  CHECK(c.gs[1].to_string() == "-1");
  CHECK(identity_holds(c));
  CHECK(verify_identity(c));

  CertificateMeasures m = measure(c);
  CHECK(m.deg_x_gf == std::vector<int>{1, 1});
  CHECK(m.h_alpha == 0.0);
}

TEST_CASE("symbolic u and determinism") {
  Spec s = mhtest::affine("x", 1);
  CertifyOptions o;
  o.mode = UMode::symbolic_u;
  BezoutCertificate c = certify(Ideal(s, {}), {P(s, "x"), P(s, "x - 1")}, o);
  CHECK(c.verified);
  CHECK(identity_holds(c));
  CHECK_FALSE(c.alpha.is_zero());

  CertifyOptions r;
  r.seed = 99;
  Spec a = mhtest::affine("x", 2);
  std::vector<MPoly> fs = {P(a, "x_1^2 + x_2"), P(a, "x_1^2 + x_2 + 3")};
  BezoutCertificate c1 = certify(Ideal(a, {}), fs, r), c2 = certify(Ideal(a, {}), fs, r);
  CHECK(c1.alpha.to_string() == c2.alpha.to_string());
  for (size_t i = 0; i < fs.size(); ++i) CHECK(c1.gs[i].to_string() == c2.gs[i].to_string());
  CHECK(c1.u == c2.u);
}

TEST_CASE("systems with a common zero are rejected") {
  Spec s = mhtest::affine("x", 1);
  CHECK_THROWS_AS(certify(Ideal(s, {}), {P(s, "x"), P(s, "x")}), Error);
  Spec a = mhtest::affine("x", 2);
  CHECK_THROWS_AS(certify(Ideal(a, {P(a, "x_1^2 + x_2^2 - 1")}), {P(a, "x_1 - 1"), P(a, "x_2")}), Error);
}

TEST_CASE("certificates on a curve") {
  Spec a = mhtest::affine("x", 2);
  Ideal V(a, {P(a, "x_1^2 + x_2^2 - 1")});
  BezoutCertificate c = certify(V, {P(a, "x_1"), P(a, "x_2")});
  CHECK(c.r == 1);
  CHECK(c.verified);
  CHECK(identity_holds(c));
}

TEST_CASE("arithmetic Masser system") {
  const int d1 = 2, d2 = 2;
  const long H = 10;
  Spec a = mhtest::affine("x", 2);
  std::vector<MPoly> fs = {P(a, "x_1^2"), P(a, "x_1*x_2 - 10")};
  BezoutCertificate c = certify(Ideal(a, {}), fs);
  CHECK(c.verified);
  CHECK(identity_holds(c));
  CertificateMeasures m = measure(c);
  CHECK(m.h_alpha >= d1 * std::log(double(H)) - 1e-9);

  Invariants inv;
  inv.n = 2;
  inv.r = 2;
  inv.d = {d1, d2};
  inv.h = {height_inf(fs[0]), height_inf(fs[1])};
  inv.supp = {1, 2};
  ZBound b = weak_Z(inv);
  for (int dx : m.deg_x_gf) CHECK(mpz_class(dx) <= b.deg);
  CHECK(real_leq(m.h_alpha, b.ht));
  for (double hv : m.h_g_plus_h_f) CHECK(real_leq(hv, b.ht));
}

TEST_CASE("parametric Masser system reaches its bound") {
  const int d1 = 2, h = 3;
  Spec s = mhtest::groups({{"t", 1, GroupKind::parameter, {}}, {"x", 2, GroupKind::affine, {}}});
  BezoutCertificate c = certify(Ideal(s, {}), {P(s, "x_1^2"), P(s, "x_1*x_2 - t^3")});
  CHECK(c.verified);
  CHECK(identity_holds(c));
  CertificateMeasures m = measure(c);

  Invariants inv;
  inv.n = 2;
  inv.r = 2;
  inv.d = {2, 2};
  inv.ht = {0, h};
  inv.p = {1};
  inv.delta = {{0, h}};
  FFBound b = weak_ff(inv);
  CHECK(b.deg_t == d1 * h);
  CHECK(m.deg_t_alpha_all == d1 * h);
  for (long v : m.deg_t_gf_all) CHECK(mpq_class(v) <= b.deg_t);
}

TEST_CASE("bound compliance on random systems without common zeros") {
  // (p, p + c) never has a common zero for a nonzero constant c.
  Spec a = mhtest::affine("x", 2);
  std::mt19937_64 rng(71);
  for (int it = 0; it < 3; ++it) {
    MPoly p = mhtest::random_poly(rng, a, 3, 2, 4) + P(a, "x_1^2");
    MPoly q = p + MPoly::constant(a, 1 + int(rng() % 5));
    BezoutCertificate c = certify(Ideal(a, {}), {p, q});
    CHECK(identity_holds(c));
    Invariants inv;
    inv.n = 2;
    inv.r = 2;
    inv.d = {p.total_degree(), q.total_degree()};
    inv.h = {height_inf(p), height_inf(q)};
    ZBound b = weak_Z(inv);
    CertificateMeasures m = measure(c);
    for (int dx : m.deg_x_gf) CHECK(mpz_class(dx) <= b.deg);
    CHECK(real_leq(m.h_alpha, b.ht));
  }
}

TEST_CASE("strong certificates") {
  Spec s = mhtest::affine("x", 1);
  BezoutCertificate c = strong_certify(Ideal(s, {}), {P(s, "x^2")}, P(s, "x"));
  CHECK(c.verified);
  CHECK(c.mu >= 1);
  CHECK(c.mu <= 2 * 2 * 1);
  CHECK(identity_holds(c));

  BezoutCertificate u = strong_certify(Ideal(s, {}), {P(s, "x"), P(s, "x - 1")}, P(s, "1"));
  CHECK(u.verified);
  CHECK(u.mu == 0);
  CHECK(identity_holds(u));

  Spec a = mhtest::affine("x", 2);
  BezoutCertificate w = strong_certify(Ideal(a, {}), {P(a, "x_1"), P(a, "x_2")}, P(a, "x_1 + x_2"));
  CHECK(w.verified);
  CHECK(w.mu <= 2 * 1);
  CHECK(identity_holds(w));
}
