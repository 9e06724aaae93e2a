// Hilbert-Samuel functions of multihomogeneous ideals, mixed degrees and
// standard models over P^1.
#pragma once

#include <map>
#include <vector>

#include "multiheight/elim.hpp"
#include "multiheight/measures.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

struct HilbertStabilizationError : Error {
  using Error::Error;
};

enum class HilbertMethod {
  standard_monomials,  // count standard monomials of a Groebner basis
  rank                 // graded_dim on every sample
};

struct HilbertOptions {
  HilbertMethod method = HilbertMethod::standard_monomials;
  int cap = -1;  // largest sampled degree; -1 means 2 * sum(n_i) + 8
};

struct HilbertData {
  Ideal ideal;
  std::vector<int> dims;
  std::map<std::vector<int>, mpz_class> values;
  // Coefficients of the Hilbert-Samuel polynomial in the monomial basis of
  // the degree variables.
  std::map<std::vector<int>, mpq_class> poly;
  std::vector<int> stabilized_from;
  int r = -1;  // degree of the polynomial; -1 for the empty variety
  std::map<std::vector<int>, mpz_class> mixed_degrees;

  mpq_class eval(const std::vector<int>& delta) const;
  mpz_class degree(const std::vector<int>& b) const;
};

// dim of the degree-delta slice of K[x]/I by linear algebra over Q.
mpz_class graded_dim(const Ideal& I, const std::vector<int>& delta);

// dim of the degree-delta slice counted from a Groebner basis.
mpz_class graded_dim_standard(const GroebnerBasis& G, const std::vector<int>& delta);

HilbertData hilbert_fit(const Ideal& I, const HilbertOptions& opts = {});

// Mixed degrees deg_b for |b| = r.
std::map<std::vector<int>, mpz_class> mixed_degrees(const Ideal& I, const HilbertOptions& opts = {});

// Ideal in a spec with a projective group "s" (s_0, s_1) followed by the
// projective groups of I. `tgroup` must be a parameter group of size one.
Ideal standard_model(const Ideal& I, const std::string& tgroup = "t");

// deg_{(0, r+1)} of the standard model; one projective group only.
HeightScalar ff_height(const Ideal& I, const std::string& tgroup = "t");

// Mixed degrees of the direct image of V(I) under the linear projection that
// keeps the first l_i + 1 coordinates of each projective group. Computed as
// the degrees deg_{(0,b)} of the closure of the graph.
std::map<std::vector<int>, mpz_class> pushforward_mixed_degrees(const Ideal& I, const std::vector<int>& l,
                                                                const HilbertOptions& opts = {});

}  // namespace mh
