#pragma once

// Grading of the incremental Delaunay complex into a 2-parameter chain
// complex (minimum-enclosing-ball radius or incremental radius, crossed
// with the sublevel parameter), plus the SCC2020 text serialization.

#include <iosfwd>
#include <string>
#include <vector>

#include "delbif/incremental_complex.hpp"

namespace delbif {

struct Bigrade {
  double r = 0.0;  // radius; >= 0
  double s = 0.0;  // function value
};

struct GradedCell {
  Bigrade grade;
  std::vector<int> boundary;  // indices into the next-lower block, ascending
  Simplex verts;              // empty after parsing a file
};

struct GradedComplex {
  // cells[k] holds the k-cells, sorted by (r, s, vertex list).
  std::vector<std::vector<GradedCell>> cells;

  bool operator==(const GradedComplex& other) const;
};

/// Bigrade each simplex by (meb radius, max function value).  meb radii are
/// computed in order of decreasing dimension, reusing a coface's ball
/// whenever it strictly contains the complementary vertex.
GradedComplex grade_delcech(const IncrementalComplex& c);

/// Bigrade each simplex by (incremental Delaunay radius, max function
/// value).  Aborts if the witness program is infeasible for a stored
/// simplex, which would contradict complex membership.
GradedComplex grade_del(const IncrementalComplex& c);

/// A bifiltration-validity violation, as data.
struct Violation {
  enum Kind { MONOTONICITY, BOUNDARY_CARDINALITY, BOUNDARY_SQUARED } kind;
  int dimension;
  int cell;
  std::string message;
};

/// Checks grade monotonicity along boundaries, boundary cardinality k+1,
/// and that the boundary of a boundary vanishes over GF(2).
std::vector<Violation> validate(const GradedComplex& g);

/// Emit the SCC2020 text format.  Deterministic and byte-exact: LF line
/// endings, single-space separators, shortest round-trip decimals.
void write_scc2020(const GradedComplex& g, std::ostream& sink,
                   const std::vector<std::string>& metadata = {});

/// Parse the SCC2020 text format; inverse of write_scc2020 on canonical
/// files.  Throws InputError with a line number on malformed input.
GradedComplex read_scc2020(std::istream& source);

/// Shortest decimal string that round-trips through binary64.
std::string format_double(double v);

}  // namespace delbif
