// Closed-form degree and height bounds for Bezout identities and implicit
// equations.
#pragma once

#include <string>
#include <vector>

#include "multiheight/newton.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

struct BoundInputError : Error {
  using Error::Error;
};

struct Invariants {
  int n = 0;  // number of affine variables
  int r = 0;  // dimension of V
  std::vector<int> d;                     // deg_x(f_j)
  std::vector<double> h;                  // h(f_j) over Z (natural log)
  std::vector<long> ht;                   // deg_t(f_j), single parameter group
  std::vector<std::vector<long>> delta;   // delta[l][j] = deg_{t_l}(f_j)
  std::vector<int> p;                     // sizes of the parameter groups
  std::vector<long> supp;                 // #Supp(f_j)
  mpz_class degV = 1;
  double hV = 0.0;                        // canonical height over Z
  long hV_t = 0;                          // height over k[t]
  std::vector<long> hV_groups;            // h_{t_l}(V)
  int d0 = 1;                             // strong forms: max(1, deg_x g)
  double h0 = 0.0;                        // h(g) over Z
  long h0_t = 0;                          // deg_t(g)

  int s() const { return static_cast<int>(d.size()); }
  int m() const { return static_cast<int>(p.size()); }
};

struct ZBound {
  mpz_class deg;
  double ht = 0.0;
  std::vector<mpq_class> deg_t;  // per parameter group (groups variant)
};

struct FFBound {
  mpz_class deg;
  mpq_class deg_t;                  // single group
  std::vector<mpq_class> deg_t_groups;
};

struct StrongZBound {
  mpz_class mu;
  mpz_class deg;
  double ht = 0.0;
};

struct StrongFFBound {
  mpz_class mu;
  mpz_class deg;
  mpq_class deg_t;
};

enum class BoundKind { ff, Z };

struct MixedSBound {
  mpz_class deg;
  mpq_class deg_t;  // ff kind
  double ht = 0.0;  // Z kind
};

ZBound weak_Z(const Invariants& inv);
ZBound weak_Z_groups(const Invariants& inv);
StrongZBound strong_Z(const Invariants& inv);
FFBound weak_ff(const Invariants& inv);
FFBound weak_ff_groups(const Invariants& inv);
StrongFFBound strong_ff(const Invariants& inv);
MixedSBound mixed_S(const Invariants& inv, BoundKind kind);

// Right-hand side of the height half-space for resultant cofactors,
// (prod d)(hV + (6r+10) log(n+3) degV).
double resultant_cofactor_height(const Invariants& inv);

enum class PerronVariant { param, Z, Z_nonfinite, rational_param, rational_Z };

struct PerronRegion {
  NewtonRegion region;
  // Rational variants: deg_{y_i}(E) caps, and the deg_t (param) or Mahler
  // measure (Z) bound.
  std::vector<mpz_class> deg_y_caps;
  mpq_class deg_t_cap;
  double mahler_cap = 0.0;
};

// Here d, ht/delta, h and supp describe the map components q_1..q_{r+1}
// (for rational variants the max over numerator and denominator).
PerronRegion perron_region(const Invariants& inv, PerronVariant variant);

PerronVariant perron_variant_from_string(const std::string& s);
std::string to_string(PerronVariant v);

}  // namespace mh
