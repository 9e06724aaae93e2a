// Poisson products, Macaulay resultants and eliminants with multiplicity.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multiheight/elim.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

struct CyclePoint {
  std::vector<std::vector<mpq_class>> coords;  // one coordinate vector per projective group
  int mult = 1;
};

struct ZeroCycle {
  std::vector<CyclePoint> points;

  std::vector<int> dims() const;
  long degree() const;  // sum of multiplicities
};

// Product of two 0-cycles, multiplicities multiplied.
ZeroCycle cycle_product(const ZeroCycle& a, const ZeroCycle& b);

// Primitive integer polynomial proportional to prod_xi F0(xi)^{m_xi}, where
// F0 = sum_a u_a x^a is the general form of multidegree d0. The result lives
// in a spec with one parameter group `ugroup` whose variables follow
// general_form_monomials(dims, d0).
MPoly poisson_resultant(const ZeroCycle& X, const std::vector<int>& d0, const std::string& ugroup = "u0");

// Exponent vectors (concatenated over groups) of multidegree d0.
std::vector<std::vector<int>> general_form_monomials(const std::vector<int>& dims, const std::vector<int>& d0);

struct MacaulaySingular : Error {
  using Error::Error;
};

struct MacaulayOptions {
  int retries = 5;
  uint64_t seed = 0;
};

// Resultant of n+1 homogeneous forms in the single projective group of
// their spec. Coefficients may involve other (parameter) groups, in which
// case the result is a polynomial in those; otherwise it is a constant.
// The result lives in the spec with the projective group removed.
MPoly macaulay_resultant(const std::vector<MPoly>& fs, const MacaulayOptions& opts = {});

// Determinants; exact.
mpq_class det_rational(std::vector<std::vector<mpq_class>> m);
MPoly det_bareiss(std::vector<std::vector<MPoly>> m, const Spec& spec);

struct EliminantResult {
  MPoly elim;
  int nu = 0;
  MPoly res;  // elim^nu
  std::vector<mpz_class> predicted;  // deg_{U_k}(Res) from mixed degrees
  std::vector<mpz_class> actual;     // deg_{U_k}(Elim)
};

struct MultiplicityMismatch : Error {
  using Error::Error;
};

// Eliminant of V for the index e(c) of linear forms, and the exponent nu
// with Res = Elim^nu. Linear form k uses the group "u<offset+k>".
EliminantResult eliminant_with_multiplicity(const Ideal& V, const std::vector<int>& c, int u_offset = 0);

// Checks the product rule for resultants of X1 x X2 with index e(c1, c2),
// up to a rational scalar and sign.
bool product_resultant_check(const ZeroCycle& X1, const ZeroCycle& X2, const std::vector<int>& c1,
                             const std::vector<int>& c2);
bool product_resultant_check(const Ideal& V1, const Ideal& V2, const std::vector<int>& c1,
                             const std::vector<int>& c2);

// The u-monomial of F0(xi) evaluated at a point: sum_a u_a xi^a.
MPoly general_form_at(const Spec& uspec, int uoffset, const std::vector<std::vector<int>>& monos,
                      const std::vector<mpq_class>& flat_coords);

}  // namespace mh
