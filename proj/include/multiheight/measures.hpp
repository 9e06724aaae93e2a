// Heights and measures of polynomials and points.
#pragma once

#include <string>
#include <vector>

#include "multiheight/polycore.hpp"

namespace mh {

// Either an exact integer (t-degree heights) or a real on the natural-log
// scale.
struct HeightScalar {
  enum class Kind { ExactInt, Real };
  Kind kind = Kind::Real;
  mpz_class exact = 0;
  double real = 0.0;

  static HeightScalar integer(const mpz_class& v) { return {Kind::ExactInt, v, 0.0}; }
  static HeightScalar real_value(double v) { return {Kind::Real, 0, v}; }
  bool is_exact() const { return kind == Kind::ExactInt; }
  double as_double() const { return is_exact() ? exact.get_d() : real; }
  std::string to_string() const;
};

constexpr double kRelTol = 1e-9;
constexpr double kAbsTol = 1e-12;

// a <= b up to the default tolerances.
bool real_leq(double a, double b, double rel = kRelTol, double abs = kAbsTol);
bool real_eq(double a, double b, double rel = kRelTol, double abs = kAbsTol);

// log of a positive rational, accurate for numbers of any size.
double log_abs(const mpq_class& q);
double log_abs(const mpz_class& z);

// log max |coefficient|; 0 for the zero polynomial. Requires integer
// coefficients.
double height_inf(const MPoly& f);
// Maximal degree of the coefficients in the variables of a parameter group.
long height_t(const MPoly& f, std::string_view group);
// Same over several parameter groups together.
long height_t(const MPoly& f, const std::vector<int>& groups);

double l1_norm_log(const MPoly& f);
// Certified upper bound for log of the sup norm on the torus (the l1 norm).
double sup_norm_upper_log(const MPoly& f);

enum class MahlerMethod { automatic, roots, torus_quadrature };

struct MahlerEstimate {
  double estimate = 0.0;
  double radius = 0.0;
};

struct MahlerToleranceError : Error {
  using Error::Error;
};

// |estimate - m(f)| <= radius <= tol. Projective groups in which f is
// homogeneous are dehomogenized first. Quadrature handles at most three
// remaining variables.
MahlerEstimate mahler_estimate(const MPoly& f, MahlerMethod method = MahlerMethod::automatic,
                               double tol = 1e-9);

// Sum over groups of (sum_{j=1}^{n_i} 1/(2j)) * d_i.
double philippon_correction(const std::vector<int>& dims, const std::vector<int>& degrees);
mpq_class philippon_correction_exact(const std::vector<int>& dims, const std::vector<int>& degrees);

// Canonical heights of the factors of a point with integer coordinates.
std::vector<HeightScalar> canonical_point_height(const std::vector<std::vector<mpz_class>>& coords);
// Heights of a point with coordinates in k[t]: coordinates made coprime,
// then the maximal t-degree.
std::vector<HeightScalar> canonical_point_height(const std::vector<std::vector<MPoly>>& coords);

enum class DivisorMode { canonical_Z, ff_t };

struct DivisorHeight {
  HeightScalar value;
  double radius = 0.0;  // Mahler radius in canonical mode
};

DivisorHeight divisor_height(const MPoly& fD, DivisorMode mode, double tol = 1e-9);

}  // namespace mh
