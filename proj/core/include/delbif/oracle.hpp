#pragma once

// Brute-force references, exact-rational feasibility, and a GF(2) homology
// engine.  Everything here trades speed for being unimpeachable; nothing is
// shared with the construction path beyond basic linear algebra.

#include <string>
#include <vector>

#include "delbif/predicates.hpp"
#include "delbif/triangulation.hpp"

namespace delbif::oracle {

/// One lifted constraint on x = (a, b) in Q^{d+1}: dot(coeff, x) rel rhs.
/// For a point p, coeff = (p, 1) and rhs = |p|^2; then EQ puts p on the
/// sphere, GE inside-or-on, LE outside-or-on.
enum class Rel { EQ, LE, GE };
struct LiftedConstraint {
  RationalPoint coeff;
  mpq_class rhs;
  Rel rel;
};

LiftedConstraint on_sphere(const Point& p);
LiftedConstraint inside_or_on(const Point& p);
LiftedConstraint outside_or_on(const Point& p);

/// Exact feasibility by enumerating basic solutions: tight subsets of up to
/// nvars inequalities.  Complete because a nonempty polyhedron's minimal
/// face is exactly the solution set of the constraints active on it.
bool feasible(const std::vector<LiftedConstraint>& constraints,
              std::size_t nvars);

/// All simplices of the incremental Delaunay complex, by definition: for
/// every subset of size <= d+2, decide the witness-sphere system exactly.
/// Points must already be in insertion order.  Sorted output.
std::vector<Simplex> oracle_incremental(const std::vector<Point>& ordered);

/// All Delaunay simplices (empty-circumsphere definition), subsets of size
/// <= d+1 each tested for a witness sphere.  Sorted output.
std::vector<Simplex> oracle_delaunay(const std::vector<Point>& points);

/// Minimum enclosing ball by support-subset enumeration over exact
/// circumspheres; the smallest candidate ball containing every point.
RationalSphere oracle_meb(const std::vector<Point>& points);

/// Simplices with meb radius <= r (with `slack` absolute + relative play
/// for float-derived grids), up to dimension max_dim.  Sorted output.
std::vector<Simplex> cech_at(const std::vector<Point>& points, double r,
                              int max_dim, double slack = 0.0);

/// GF(2) Betti numbers beta_0..beta_up_to of a face-closed complex, by
/// column reduction of the boundary matrices.
std::vector<std::size_t> betti_gf2(const std::vector<Simplex>& complex,
                                   int up_to);

struct EquivalenceReport {
  bool ok = true;
  std::size_t grades_checked = 0;
  std::vector<std::string> mismatches;
};

/// Theorem-level check: at every critical bigrade (and midpoints), the GF(2)
/// Betti numbers of the Cech, Delaunay-Cech, and incremental-Delaunay
/// sublevel complexes agree up to dimension d.
EquivalenceReport equivalence_suite(const std::vector<Point>& positions,
                                    const std::vector<double>& gamma);

}  // namespace delbif::oracle
