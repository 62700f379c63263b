#pragma once

// The incremental Delaunay complex: the union over the insertion order of
// all Delaunay simplices ever seen, plus the (d+1)-simplices recorded from
// conflict pairs.

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "delbif/predicates.hpp"
#include "delbif/triangulation.hpp"

namespace delbif {

struct SimplexHasher {
  std::size_t operator()(const Simplex& s) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
    return h;
  }
};

class IncrementalComplex {
 public:
  /// Build from points already ordered by function value (ties broken by
  /// input position).  gamma[i] is the function value of the point of rank i.
  static IncrementalComplex build(const std::vector<Point>& ordered_points,
                                  const std::vector<double>& gamma);

  bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }

  int dimension() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& gamma() const { return gamma_; }

  /// Simplices of dimension k, sorted by vertex list.
  const std::vector<Simplex>& simplices(int k) const { return by_dim_[k]; }
  int top_dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

  std::size_t size() const { return simplices_.size(); }
  std::size_t conflict_pair_count() const { return conflict_pairs_; }
  std::size_t delaunay_size() const { return delaunay_size_; }

  struct Stats {
    std::vector<std::size_t> per_dimension;
    std::size_t total = 0;
    std::size_t delaunay_size = 0;
    double ratio = 0.0;
  };
  Stats stats() const;

 private:
  void add_with_faces(const Simplex& s);

  int dim_ = 0;
  std::vector<Point> points_;
  std::vector<double> gamma_;
  std::unordered_set<Simplex, SimplexHasher> simplices_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::size_t conflict_pairs_ = 0;
  std::size_t delaunay_size_ = 0;
};

}  // namespace delbif
