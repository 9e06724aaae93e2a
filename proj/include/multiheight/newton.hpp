// Newton regions cut out by half-spaces, containment checks and exact convex
// hulls in small dimension.
#pragma once

#include <string>
#include <vector>

#include "multiheight/polycore.hpp"

namespace mh {

// <w, x> <= beta. Exact half-spaces carry rational data; the others carry
// reals and are compared with the default tolerance.
struct HalfSpace {
  std::string label;
  bool exact = true;
  std::vector<mpq_class> w;
  mpq_class beta;
  std::vector<double> w_real;
  double beta_real = 0.0;
};

// Coordinates: a (exponents of the y group), then c (one per parameter
// variable), then the height ordinate when `has_height` is set.
// Nonnegativity of every coordinate is implied.
struct NewtonRegion {
  int dim_a = 0;
  int dim_c = 0;
  bool has_height = false;
  std::vector<HalfSpace> half_spaces;

  int dim() const { return dim_a + dim_c + (has_height ? 1 : 0); }
};

struct NewtonViolation {
  std::vector<double> point;
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct NewtonCheck {
  bool contained = true;
  std::vector<NewtonViolation> violations;
  long points = 0;
};

// Support points of E: exponents of the auxiliary group `ygroup`, then the
// exponents of the parameter variables; in extended mode the height
// ordinate h(alpha_a) of the coefficient of y^a is appended.
NewtonCheck newton_check(const MPoly& E, const NewtonRegion& region, bool extended,
                         const std::string& ygroup = "y");

using QPoint = std::vector<mpq_class>;

// Vertices of the convex hull of integer points, ambient dimension <= 4,
// sorted lexicographically. Works for lower-dimensional hulls too.
std::vector<QPoint> hull_vertices(const std::vector<QPoint>& points);

// Vertices of the polytope cut out by the exact half-spaces of the region and
// nonnegativity, restricted to the (a, c) coordinates.
std::vector<QPoint> region_vertices(const NewtonRegion& region);

// Support points (a, c) of E as rationals.
std::vector<QPoint> support_points(const MPoly& E, const std::string& ygroup = "y");

// Newton polytope of E equals the region polytope. Ambient dimension <= 4.
bool newton_polytope_equals_region(const MPoly& E, const NewtonRegion& region, const std::string& ygroup = "y");

}  // namespace mh
