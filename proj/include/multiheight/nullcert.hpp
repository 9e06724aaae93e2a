// Bezout certificates alpha = g_1 f_1 + ... + g_s f_s on an affine variety,
// built from the minimal polynomial of z under (x, z) -> (z f_j + l_j).
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "multiheight/elim.hpp"
#include "multiheight/polycore.hpp"

namespace mh {

enum class UMode { symbolic_u, specialized_u };

struct CertificationFailed : Error {
  using Error::Error;
};

// The identity did not reduce to zero modulo I(V); the fs probably share a
// zero on V.
struct VerificationFailed : Error {
  using Error::Error;
};

struct CertifyOptions {
  UMode mode = UMode::specialized_u;
  uint64_t seed = 0;
  int max_retries = 5;
  // Fixed u matrix ((r+1) x n) for the first attempt; later attempts draw.
  std::optional<std::vector<std::vector<mpz_class>>> u;
  // Check E(q, z) = 0 modulo I(V x A^1) before building cofactors.
  bool check_minimal_polynomial = true;
};

struct LinearSystem {
  Spec work;   // spec of V followed by the u groups in symbolic mode
  Spec qspec;  // work followed by the auxiliary group "z"
  std::vector<MPoly> ell;  // l_1..l_{r+1} in work
  std::vector<MPoly> q;    // q_1..q_{r+1} in qspec
  std::vector<std::vector<mpz_class>> u;  // specialized values, empty in symbolic mode
};

struct BezoutCertificate {
  Ideal V;
  std::vector<MPoly> fs;
  UMode mode = UMode::specialized_u;
  uint64_t seed = 0;
  int r = 0;
  int attempts = 0;
  std::vector<std::vector<mpz_class>> u;
  // Coefficients of the pre-combination used when s > r+1: f_j gets
  // sum_i v[j][i] f_{r+1+i} added for j <= r.
  std::vector<std::vector<mpz_class>> v;
  MPoly E;
  int delta = 0;
  MPoly alpha;            // in the spec of V, free of the affine variables
  std::vector<MPoly> gs;  // in the spec of V
  // Strong certificates: alpha * g^mu = sum g_i f_i.
  std::optional<MPoly> g;
  int mu = 0;
  bool minimal_polynomial_checked = false;
  bool verified = false;
};

LinearSystem build_system(const Ideal& V, const std::vector<MPoly>& fs, UMode mode,
                          const std::vector<std::vector<mpz_class>>& u = {});

BezoutCertificate certify(const Ideal& V, const std::vector<MPoly>& fs, const CertifyOptions& opts = {});

// Certificate for alpha g^mu = sum g_i f_i, via the system (1 - w^{d0} g, f)
// on V x A^1.
BezoutCertificate strong_certify(const Ideal& V, const std::vector<MPoly>& fs, const MPoly& g,
                                 const CertifyOptions& opts = {});

// alpha * g^mu - sum g_i f_i reduces to zero modulo I(V).
bool verify_identity(const BezoutCertificate& c);

struct CertificateMeasures {
  std::vector<int> deg_x_gf;                  // deg_x(g_i f_i)
  std::vector<long> deg_t_alpha;              // per parameter group
  std::vector<std::vector<long>> deg_t_gf;    // [i][group]
  long deg_t_alpha_all = 0;                   // all parameter groups together
  std::vector<long> deg_t_gf_all;
  double h_alpha = 0.0;
  std::vector<double> h_g_plus_h_f;
};

CertificateMeasures measure(const BezoutCertificate& c);

}  // namespace mh
