#include "delbif/triangulation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "delbif/errors.hpp"

namespace delbif {

namespace {

// Nonempty subsets of a sorted vertex list, each subset sorted.
template <class Fn>
void for_each_subset(const std::vector<int>& verts, Fn&& fn) {
  const unsigned n = static_cast<unsigned>(verts.size());
  for (unsigned s = 1; s < (1u << n); ++s) {
    Simplex sub;
    for (unsigned j = 0; j < n; ++j)
      if (s & (1u << j)) sub.push_back(verts[j]);
    fn(std::move(sub));
  }
}

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

Triangulation::Triangulation(int dimension)
    : dim_(dimension), rng_(0x1d2c3b4au) {
  if (dimension < 1)
    throw InputError("triangulation: dimension must be >= 1");
}

void Triangulation::degenerate(const std::vector<int>& ranks,
                               int inserted) const {
  std::vector<int> idx;
  for (int r : ranks)
    if (r != kInfiniteVertex) idx.push_back(r);
  if (inserted >= 0) idx.push_back(inserted);
  throw DegeneracyError(std::move(idx));
}

std::vector<Point> Triangulation::cell_points(const Cell& c) const {
  std::vector<Point> pts;
  pts.reserve(c.verts.size());
  for (int v : c.verts)
    if (v != kInfiniteVertex) pts.push_back(points_[v]);
  return pts;
}

bool Triangulation::conflicts(const Cell& c, const Point& p) const {
  const int inserted = static_cast<int>(points_.size()) - 1;
  if (!c.infinite()) {
    SideOfSphere side;
    try {
      side = in_sphere(cell_points(c), p);
    } catch (const DegeneracyError&) {
      degenerate(c.verts, inserted);
    }
    if (side == SideOfSphere::ON) degenerate(c.verts, inserted);
    return side == SideOfSphere::INSIDE;
  }
  // Infinite cell: conflict iff p lies strictly outside the supporting
  // hyperplane of the hull facet.  A reference interior point is the apex
  // of the finite neighbor behind the facet.
  std::vector<Point> facet = cell_points(c);
  const Cell& behind = cells_[c.neigh[0]];
  int ref = -1;
  for (int v : behind.verts)
    if (v != kInfiniteVertex &&
        !std::binary_search(c.verts.begin(), c.verts.end(), v))
      ref = v;
  std::vector<Point> with_ref = facet;
  with_ref.push_back(points_[ref]);
  const Sign s_ref = orientation(with_ref);
  std::vector<Point> with_p = std::move(facet);
  with_p.push_back(p);
  const Sign s_p = orientation(with_p);
  if (s_p == Sign::ZERO) degenerate(c.verts, inserted);
  return s_p != s_ref;
}

int Triangulation::locate(const Point& p) {
  if (cells_.empty()) throw std::logic_error("locate: no cells");
  const int inserted = static_cast<int>(points_.size()) - 1;
  std::size_t alive = 0;
  for (const Cell& c : cells_) alive += c.alive;

  int cur = (hint_cell_ >= 0 && cells_[hint_cell_].alive) ? hint_cell_ : -1;
  if (cur < 0)
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].alive) {
        cur = static_cast<int>(i);
        break;
      }

  std::vector<int> order(static_cast<std::size_t>(dim_) + 1);
  for (std::size_t budget = 4 * alive; budget > 0; --budget) {
    const Cell& c = cells_[cur];
    if (conflicts(c, p)) return cur;
    if (c.infinite()) {
      cur = c.neigh[0];  // step inward through the hull facet
      continue;
    }
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng_() % i]);
    bool stepped = false;
    for (int pos : order) {
      std::vector<Point> facet;
      std::vector<int> facet_ranks;
      for (std::size_t k = 0; k < c.verts.size(); ++k) {
        if (static_cast<int>(k) == pos) continue;
        facet.push_back(points_[c.verts[k]]);
        facet_ranks.push_back(c.verts[k]);
      }
      std::vector<Point> with_ref = facet;
      with_ref.push_back(points_[c.verts[pos]]);
      std::vector<Point> with_p = facet;
      with_p.push_back(p);
      const Sign s_p = orientation(with_p);
      if (s_p == Sign::ZERO) degenerate(facet_ranks, inserted);
      if (s_p != orientation(with_ref)) {
        cur = c.neigh[pos];
        stepped = true;
        break;
      }
    }
    if (!stepped) break;  // inconsistent walk state; fall back to a scan
  }

  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].alive && conflicts(cells_[i], p))
      return static_cast<int>(i);
  degenerate({}, inserted);
}

int Triangulation::new_cell() {
  if (!free_cells_.empty()) {
    int idx = free_cells_.back();
    free_cells_.pop_back();
    cells_[idx] = Cell{};
    return idx;
  }
  cells_.emplace_back();
  return static_cast<int>(cells_.size()) - 1;
}

void Triangulation::create_initial_cells() {
  const int d = dim_;
  if (orientation(points_) == Sign::ZERO) {
    std::vector<int> all(static_cast<std::size_t>(d) + 1);
    std::iota(all.begin(), all.end(), 0);
    degenerate(all, -1);
  }
  // Cell 0: the simplex on the first d+1 points; cell 1+i: the infinite
  // cell across the facet opposite vertex i.
  Cell finite;
  finite.verts.resize(static_cast<std::size_t>(d) + 1);
  std::iota(finite.verts.begin(), finite.verts.end(), 0);
  finite.neigh.resize(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) finite.neigh[i] = 1 + i;
  cells_.push_back(std::move(finite));
  for (int i = 0; i <= d; ++i) {
    Cell inf;
    inf.verts.push_back(kInfiniteVertex);
    for (int v = 0; v <= d; ++v)
      if (v != i) inf.verts.push_back(v);
    inf.neigh.assign(inf.verts.size(), 0);
    for (std::size_t pos = 1; pos < inf.verts.size(); ++pos)
      inf.neigh[pos] = 1 + inf.verts[pos];
    cells_.push_back(std::move(inf));
  }
  hint_cell_ = 0;
}

std::vector<ConflictPair> Triangulation::insert(const Point& p) {
  if (static_cast<int>(p.size()) != dim_)
    throw InputError("insert: point dimension mismatch");
  if (auto it = point_index_.find(p); it != point_index_.end())
    throw DuplicatePointError(it->second, static_cast<int>(points_.size()));
  const int rank = static_cast<int>(points_.size());
  point_index_.emplace(p, rank);
  points_.push_back(p);

  if (!initialized()) {
    if (static_cast<int>(points_.size()) == dim_ + 1) create_initial_cells();
    return {};
  }

  const int seed = locate(p);

  // Conflict zone by BFS over the neighbor graph.
  std::vector<int> zone = {seed};
  std::unordered_set<int> in_zone = {seed};
  for (std::size_t head = 0; head < zone.size(); ++head) {
    for (int nb : cells_[zone[head]].neigh) {
      if (in_zone.count(nb) || !cells_[nb].alive) continue;
      if (conflicts(cells_[nb], p)) {
        in_zone.insert(nb);
        zone.push_back(nb);
      }
    }
  }

  std::vector<ConflictPair> pairs;
  for (int ci : zone)
    if (!cells_[ci].infinite())
      pairs.push_back(ConflictPair{cells_[ci].verts, rank});

  // Boundary facets of the zone, each spawning the cone cell facet + rank.
  struct BoundaryFacet {
    std::vector<int> facet;  // sorted
    int outside;             // neighbor cell beyond the facet
  };
  std::vector<BoundaryFacet> boundary;
  for (int ci : zone) {
    const Cell& c = cells_[ci];
    for (std::size_t pos = 0; pos < c.neigh.size(); ++pos) {
      if (in_zone.count(c.neigh[pos])) continue;
      BoundaryFacet bf;
      for (std::size_t k = 0; k < c.verts.size(); ++k)
        if (k != pos) bf.facet.push_back(c.verts[k]);
      bf.outside = c.neigh[pos];
      boundary.push_back(std::move(bf));
    }
  }

  for (int ci : zone) {
    cells_[ci].alive = false;
    free_cells_.push_back(ci);
  }

  // Retriangulate: cone from the new vertex over the zone boundary.
  std::map<std::vector<int>, std::pair<int, std::size_t>> half_facets;
  std::vector<int> created;
  for (const BoundaryFacet& bf : boundary) {
    const int idx = new_cell();
    created.push_back(idx);
    Cell& nc = cells_[idx];
    nc.verts = bf.facet;
    nc.verts.push_back(rank);  // rank exceeds all existing: stays sorted
    nc.neigh.assign(nc.verts.size(), -1);
    nc.neigh.back() = bf.outside;
    // Back-wire the outside cell across the shared facet.
    Cell& out = cells_[bf.outside];
    for (std::size_t pos = 0; pos < out.verts.size(); ++pos) {
      if (!std::binary_search(bf.facet.begin(), bf.facet.end(),
                              out.verts[pos])) {
        out.neigh[pos] = idx;
        break;
      }
    }
    // Facets between new cells: match the two halves as they appear.
    for (std::size_t pos = 0; pos + 1 < nc.verts.size(); ++pos) {
      std::vector<int> key;
      for (std::size_t k = 0; k < nc.verts.size(); ++k)
        if (k != pos) key.push_back(nc.verts[k]);
      auto [it, fresh] = half_facets.try_emplace(std::move(key), idx, pos);
      if (!fresh) {
        auto [other, other_pos] = it->second;
        cells_[idx].neigh[pos] = other;
        cells_[other].neigh[other_pos] = idx;
      }
    }
  }
  hint_cell_ = created.empty() ? -1 : created.front();
  return pairs;
}

std::vector<Simplex> Triangulation::finite_simplices() const {
  std::unordered_set<Simplex, SimplexHash> seen;
  if (!initialized()) {
    std::vector<int> all(points_.size());
    std::iota(all.begin(), all.end(), 0);
    if (!all.empty())
      for_each_subset(all, [&](Simplex s) { seen.insert(std::move(s)); });
  } else {
    for (const Cell& c : cells_) {
      if (!c.alive || c.infinite()) continue;
      for_each_subset(c.verts, [&](Simplex s) { seen.insert(std::move(s)); });
    }
  }
  std::vector<Simplex> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Triangulation::finite_cell_count() const {
  std::size_t n = 0;
  for (const Cell& c : cells_) n += c.alive && !c.infinite();
  return n;
}

std::size_t Triangulation::infinite_cell_count() const {
  std::size_t n = 0;
  for (const Cell& c : cells_) n += c.alive && c.infinite();
  return n;
}

bool Triangulation::neighbors_consistent() const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (!c.alive) continue;
    for (std::size_t pos = 0; pos < c.neigh.size(); ++pos) {
      const int nb = c.neigh[pos];
      if (nb < 0 || !cells_[nb].alive) return false;
      // The shared facet must be c.verts minus position pos.
      std::vector<int> facet;
      for (std::size_t k = 0; k < c.verts.size(); ++k)
        if (k != pos) facet.push_back(c.verts[k]);
      const Cell& other = cells_[nb];
      std::size_t found = 0;
      int back = -1;
      for (std::size_t k = 0; k < other.verts.size(); ++k) {
        if (std::binary_search(facet.begin(), facet.end(), other.verts[k]))
          ++found;
        else
          back = static_cast<int>(k);
      }
      if (found != facet.size() || back < 0) return false;
      if (other.neigh[back] != static_cast<int>(i)) return false;
    }
  }
  return true;
}

}  // namespace delbif
