#pragma once

// Incremental d-dimensional Delaunay triangulation via Bowyer-Watson with a
// symbolic point at infinity.  Insertions are strictly sequential; every
// finite conflict pair encountered along the way is reported to the caller.

#include <cstddef>
#include <map>
#include <random>
#include <vector>

#include "delbif/predicates.hpp"

namespace delbif {

/// Simplex as a strictly increasing list of vertex ranks (0-based insertion
/// order).
using Simplex = std::vector<int>;

/// The symbolic point at infinity.  Sorts below every finite rank, so it is
/// always the first vertex of an infinite cell.
inline constexpr int kInfiniteVertex = -1;

struct ConflictPair {
  Simplex cell_vertices;  // the d+1 finite ranks of a d-simplex of Del(X_i)
  int inserted;           // rank of x_{i+1}
};

class Triangulation {
 public:
  explicit Triangulation(int dimension);

  /// Insert the next point (its rank is the number of points inserted so
  /// far) and return the finite conflict pairs destroyed by the insertion.
  /// Throws DuplicatePointError / DegeneracyError.
  std::vector<ConflictPair> insert(const Point& p);

  /// A cell in conflict with p, found by a remembering stochastic
  /// visibility walk with a linear-scan fallback.
  int locate(const Point& p);

  /// All finite cells and all their faces, deduplicated and sorted.
  std::vector<Simplex> finite_simplices() const;

  int dimension() const { return dim_; }
  std::size_t point_count() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  std::size_t finite_cell_count() const;
  std::size_t infinite_cell_count() const;

  struct Cell {
    std::vector<int> verts;  // sorted; kInfiniteVertex first when present
    std::vector<int> neigh;  // neigh[i] shares the facet opposite verts[i]
    bool alive = true;
    bool infinite() const { return verts[0] == kInfiniteVertex; }
  };
  const Cell& cell(int index) const { return cells_[index]; }

  /// Check the symmetric-neighbor invariant; used by tests.
  bool neighbors_consistent() const;

 private:
  bool conflicts(const Cell& c, const Point& p) const;
  bool initialized() const { return !cells_.empty(); }
  void create_initial_cells();
  int new_cell();
  std::vector<Point> cell_points(const Cell& c) const;
  [[noreturn]] void degenerate(const std::vector<int>& ranks,
                               int inserted) const;

  int dim_;
  std::vector<Point> points_;
  std::vector<Cell> cells_;
  std::vector<int> free_cells_;
  std::map<Point, int> point_index_;
  int hint_cell_ = -1;
  std::mt19937 rng_;
};

}  // namespace delbif
