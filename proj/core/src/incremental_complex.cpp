#include "delbif/incremental_complex.hpp"

#include <algorithm>

#include "delbif/errors.hpp"

namespace delbif {

void IncrementalComplex::add_with_faces(const Simplex& s) {
  const unsigned n = static_cast<unsigned>(s.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Simplex face;
    for (unsigned j = 0; j < n; ++j)
      if (mask & (1u << j)) face.push_back(s[j]);
    simplices_.insert(std::move(face));
  }
}

IncrementalComplex IncrementalComplex::build(
    const std::vector<Point>& ordered_points,
    const std::vector<double>& gamma) {
  if (ordered_points.empty())
    throw InputError("build: need at least one point");
  if (gamma.size() != ordered_points.size())
    throw InputError("build: gamma size mismatch");

  IncrementalComplex c;
  c.dim_ = static_cast<int>(ordered_points[0].size());
  c.points_ = ordered_points;
  c.gamma_ = gamma;

  Triangulation tri(c.dim_);
  for (const Point& p : ordered_points) {
    for (ConflictPair& cp : tri.insert(p)) {
      Simplex top = std::move(cp.cell_vertices);
      top.push_back(cp.inserted);  // inserted rank exceeds all cell ranks
      c.add_with_faces(top);
      ++c.conflict_pairs_;
    }
  }
  // Hull simplices of the final triangulation are in the complex by
  // definition but need not be faces of any (d+1)-simplex once the
  // symbolic scaffold is stripped; union them in.
  std::vector<Simplex> final_del = tri.finite_simplices();
  c.delaunay_size_ = final_del.size();
  for (Simplex& s : final_del) c.simplices_.insert(std::move(s));

  int top_dim = 0;
  for (const Simplex& s : c.simplices_)
    top_dim = std::max(top_dim, static_cast<int>(s.size()) - 1);
  c.by_dim_.resize(static_cast<std::size_t>(top_dim) + 1);
  for (const Simplex& s : c.simplices_)
    c.by_dim_[s.size() - 1].push_back(s);
  for (auto& dim : c.by_dim_) std::sort(dim.begin(), dim.end());
  return c;
}

IncrementalComplex::Stats IncrementalComplex::stats() const {
  Stats st;
  for (const auto& dim : by_dim_) st.per_dimension.push_back(dim.size());
  st.total = simplices_.size();
  st.delaunay_size = delaunay_size_;
  st.ratio = delaunay_size_ == 0
                 ? 1.0
                 : static_cast<double>(st.total) /
                       static_cast<double>(delaunay_size_);
  return st;
}

}  // namespace delbif
