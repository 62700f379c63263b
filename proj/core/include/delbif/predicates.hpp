#pragma once

// Exact-decision geometric primitives: orientation, in-sphere, circumspheres,
// minimum enclosing balls, and the pencil-constrained minimum witness radius.
//
// Sign predicates are filtered: evaluated in hardware floats with a
// conservative error bound, falling back to arbitrary-precision rationals
// when inconclusive.  Radii are kept squared to stay rational-exact.

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace delbif {

using Point = std::vector<double>;
using RationalPoint = std::vector<mpq_class>;

enum class Sign : int { NEGATIVE = -1, ZERO = 0, POSITIVE = 1 };

enum class SideOfSphere { INSIDE, ON, OUTSIDE };

struct Sphere {
  Point center;
  double radius_sq = 0.0;
  double radius() const;
};

struct RationalSphere {
  RationalPoint center;
  mpq_class radius_sq;
};

/// Sign of the orientation determinant of d+1 points in R^d.  Exact.
/// Throws InputError on a dimension mismatch.
Sign orientation(const std::vector<Point>& pts);

/// Classify q against the circumsphere of d+1 affinely independent points.
/// Exact, and independent of the permutation of the defining set.
/// Throws DegeneracyError when the defining set is affinely dependent.
SideOfSphere in_sphere(const std::vector<Point>& defining, const Point& q);

/// The sphere through all pts whose center lies in their affine hull;
/// this is the minimum-radius circumsphere.  Requires 1 <= k <= d+1
/// affinely independent points.
Sphere smallest_circumsphere(const std::vector<Point>& pts);

/// Exact-rational variant; nullopt when pts are affinely dependent.
std::optional<RationalSphere> smallest_circumsphere_exact(
    const std::vector<RationalPoint>& pts);

/// Minimum enclosing ball by move-to-front Welzl recursion.
Sphere meb(const std::vector<Point>& pts);

/// Result of the minimum-witness-radius program.  The radius is exact.
struct WitnessRadius {
  bool feasible = false;
  mpq_class radius_sq;
  double radius() const;
};

/// Minimum radius over all spheres circumscribing sigma_prime with
/// must_cover inside-or-on and every must_avoid point outside-or-on.
/// Formulated as a convex quadratic program in the lifted coordinates of
/// the sphere and solved exactly over the rationals.
WitnessRadius min_witness_radius(const std::vector<Point>& sigma_prime,
                                 const Point& must_cover,
                                 const std::vector<Point>& must_avoid);

inline RationalPoint to_rational(const Point& p) {
  RationalPoint r;
  r.reserve(p.size());
  for (double c : p) r.emplace_back(c);
  return r;
}

}  // namespace delbif
