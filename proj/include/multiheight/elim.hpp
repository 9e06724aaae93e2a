// Buchberger engine with block elimination orders, implicitization, minimal
// polynomials and Chow forms.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "multiheight/polycore.hpp"

namespace mh {

struct GroebnerCapExceeded : Error {
  using Error::Error;
};

// Raised when an elimination ideal is expected to be principal and is not.
struct NonPrincipalElimination : Error {
  using Error::Error;
};

// Raised when an elimination ideal that should define a hypersurface is zero.
struct ZeroElimination : Error {
  using Error::Error;
};

// Raised when a minimal polynomial has no positive degree in z.
struct DegenerateMinimalPolynomial : Error {
  using Error::Error;
};

struct MonomialOrder {
  enum class Kind { lex, graded_lex, block };
  Kind kind = Kind::graded_lex;
  // Block orders: variable indices per block, most significant block first.
  // Inside each block monomials compare by degree, then lexicographically.
  std::vector<std::vector<int>> blocks;

  static MonomialOrder lex() { return {Kind::lex, {}}; }
  static MonomialOrder graded_lex() { return {Kind::graded_lex, {}}; }
  // Groups listed first are most significant. Variables of groups not listed
  // form a final block.
  static MonomialOrder block(const Spec& spec, const std::vector<std::vector<std::string>>& groups);
  // The named groups form the top block; everything else the bottom block.
  static MonomialOrder elimination(const Spec& spec, const std::vector<std::string>& drop);
};

struct GroebnerOptions {
  long long pair_cap = 200000;
};

namespace gb {
struct Engine;
}

class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const Spec& spec() const { return spec_; }
  const MonomialOrder& order() const { return order_; }
  // Reduced basis, monic over Q, sorted by increasing leading monomial.
  const std::vector<MPoly>& basis() const { return basis_; }
  // Leading exponents with respect to the order, aligned with basis().
  const std::vector<Exponent>& leading_exponents() const { return leading_; }
  bool is_unit() const;
  long long pairs_processed() const { return pairs_; }

  MPoly normal_form(const MPoly& f) const;
  bool contains(const MPoly& f) const { return normal_form(f).is_zero(); }

 private:
  friend GroebnerBasis groebner(const Ideal&, const MonomialOrder&, const GroebnerOptions&);
  Spec spec_;
  MonomialOrder order_;
  std::vector<MPoly> basis_;
  std::vector<Exponent> leading_;
  long long pairs_ = 0;
  std::shared_ptr<const gb::Engine> engine_;
};

GroebnerBasis groebner(const Ideal& I, const MonomialOrder& order, const GroebnerOptions& opts = {});

// Basis elements free of the dropped groups, rewritten in the spec without
// those groups.
Ideal eliminate(const Ideal& I, const std::vector<std::string>& drop, const GroebnerOptions& opts = {});

// Generator of I(V) + (y_j - q_j) intersected with the ring of the kept groups
// of V (parameters and auxiliaries) and a new group `y` of size #q. Groups of
// kind affine or projective are eliminated. The result is squarefree,
// integer-primitive and sign-normalized.
MPoly implicit_equation(const Ideal& V, const std::vector<MPoly>& q, const std::string& ygroup = "y");

// Minimal polynomial of z under (x, z) -> (q_1, ..., q_{r+1}) on V x A^1.
// `q` lives in a spec containing the groups of V plus an auxiliary group
// named `zgroup` (and possibly parameter groups). Affine and projective
// groups are eliminated.
MPoly minimal_polynomial(const Ideal& V, const std::vector<MPoly>& q, const std::string& zgroup = "z",
                         const std::string& ygroup = "y");

// Chow form of a projective variety given by a homogeneous ideal in a spec
// with one projective group (and optionally parameter groups). Returns a
// polynomial in groups u0..ur, each of size n+1, followed by the parameter
// groups; primitive over the parameters.
MPoly chow_form(const Ideal& V, int r);

// Sum of the terms of f that are minimal for the lexicographic sequence of
// weight vectors.
MPoly initial_form(const MPoly& f, const std::vector<std::vector<long long>>& weights);

// Krull dimension of the variety of I over the fraction field of the
// parameter groups, computed from a basis under a block order with
// non-parameter variables first. Returns -1 for the empty variety.
int affine_dimension(const Ideal& I);

}  // namespace mh
