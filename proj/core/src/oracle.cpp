#include "delbif/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "delbif/bifiltration.hpp"
#include "delbif/errors.hpp"
#include "delbif/functions.hpp"
#include "delbif/incremental_complex.hpp"
#include "delbif/linalg.hpp"

namespace delbif::oracle {

namespace {

mpq_class dot(const RationalPoint& a, const RationalPoint& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LiftedConstraint row_for(const Point& p, Rel rel) {
  LiftedConstraint c;
  c.coeff = to_rational(p);
  c.coeff.emplace_back(1);
  c.rhs = 0;
  for (const mpq_class& x : to_rational(p)) c.rhs += x * x;
  c.rel = rel;
  return c;
}

bool satisfies(const LiftedConstraint& c, const RationalPoint& x) {
  const mpq_class v = dot(c.coeff, x);
  switch (c.rel) {
    case Rel::EQ:
      return v == c.rhs;
    case Rel::GE:
      return v >= c.rhs;
    case Rel::LE:
      return v <= c.rhs;
  }
  return false;
}

/// Enumerate all simplices (as sorted index vectors) over `universe` of
/// cardinality between 1 and max_card, invoking f on each.
template <class F>
void for_each_subset_of(int universe, int max_card, F&& f) {
  Simplex current;
  auto rec = [&](auto&& self, int next) -> void {
    if (!current.empty()) f(const_cast<const Simplex&>(current));
    if (static_cast<int>(current.size()) == max_card) return;
    for (int i = next; i < universe; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

LiftedConstraint on_sphere(const Point& p) { return row_for(p, Rel::EQ); }
LiftedConstraint inside_or_on(const Point& p) { return row_for(p, Rel::GE); }
LiftedConstraint outside_or_on(const Point& p) { return row_for(p, Rel::LE); }

bool feasible(const std::vector<LiftedConstraint>& constraints,
              std::size_t nvars) {
  std::vector<const LiftedConstraint*> eqs, ineqs;
  for (const LiftedConstraint& c : constraints)
    (c.rel == Rel::EQ ? eqs : ineqs).push_back(&c);

  linalg::Matrix<mpq_class> eq_a;
  std::vector<mpq_class> eq_b;
  for (const LiftedConstraint* c : eqs) {
    eq_a.push_back(c->coeff);
    eq_b.push_back(c->rhs);
  }
  std::size_t cap;  // free dimension left by the equalities
  {
    auto sol = linalg::affine_solve(eq_a, eq_b, nvars);
    if (!sol.consistent) return false;
    cap = sol.null_basis.size();
  }

  auto candidate_feasible = [&](const std::vector<std::size_t>& tight) {
    linalg::Matrix<mpq_class> a = eq_a;
    std::vector<mpq_class> b = eq_b;
    for (std::size_t i : tight) {
      a.push_back(ineqs[i]->coeff);
      b.push_back(ineqs[i]->rhs);
    }
    auto sol = linalg::affine_solve(std::move(a), std::move(b), nvars);
    if (!sol.consistent) return false;
    for (const LiftedConstraint& c : constraints)
      if (!satisfies(c, sol.particular)) return false;
    return true;
  };

  // Tight subsets in order of increasing size, for early exit.
  std::vector<std::size_t> subset;
  auto rec = [&](auto&& self, std::size_t next, std::size_t want) -> bool {
    if (subset.size() == want) return candidate_feasible(subset);
    for (std::size_t i = next; i < ineqs.size(); ++i) {
      subset.push_back(i);
      if (self(self, i + 1, want)) return true;
      subset.pop_back();
    }
    return false;
  };
  for (std::size_t want = 0; want <= std::min(cap, ineqs.size()); ++want)
    if (rec(rec, 0, want)) return true;
  return false;
}

std::vector<Simplex> oracle_incremental(const std::vector<Point>& ordered) {
  std::vector<Simplex> out;
  if (ordered.empty()) return out;
  const int n = static_cast<int>(ordered.size());
  const int d = static_cast<int>(ordered.front().size());
  for_each_subset_of(n, d + 2, [&](const Simplex& s) {
    const int last = s.back();
    std::vector<LiftedConstraint> cs;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      cs.push_back(on_sphere(ordered[s[i]]));
    cs.push_back(inside_or_on(ordered[last]));
    std::size_t member = 0;
    for (int i = 0; i < last; ++i) {
      if (member < s.size() && s[member] == i) {
        ++member;
        continue;
      }
      cs.push_back(outside_or_on(ordered[i]));
    }
    if (feasible(cs, d + 1)) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Simplex> oracle_delaunay(const std::vector<Point>& points) {
  std::vector<Simplex> out;
  if (points.empty()) return out;
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points.front().size());
  for_each_subset_of(n, d + 1, [&](const Simplex& s) {
    std::vector<LiftedConstraint> cs;
    for (int v : s) cs.push_back(on_sphere(points[v]));
    std::size_t member = 0;
    for (int i = 0; i < n; ++i) {
      if (member < s.size() && s[member] == i) {
        ++member;
        continue;
      }
      cs.push_back(outside_or_on(points[i]));
    }
    if (feasible(cs, d + 1)) out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

RationalSphere oracle_meb(const std::vector<Point>& points) {
  if (points.empty()) throw InputError("oracle_meb: no points");
  const int n = static_cast<int>(points.size());
  const int d = static_cast<int>(points.front().size());
  std::vector<RationalPoint> rational;
  rational.reserve(points.size());
  for (const Point& p : points) rational.push_back(to_rational(p));

  std::optional<RationalSphere> best;
  for_each_subset_of(n, d + 1, [&](const Simplex& support) {
    std::vector<RationalPoint> sub;
    for (int v : support) sub.push_back(rational[v]);
    auto ball = smallest_circumsphere_exact(sub);
    if (!ball) return;
    if (best && ball->radius_sq >= best->radius_sq) return;
    for (const RationalPoint& p : rational) {
      mpq_class dist_sq = 0;
      for (int j = 0; j < d; ++j) {
        const mpq_class diff = p[j] - ball->center[j];
        dist_sq += diff * diff;
      }
      if (dist_sq > ball->radius_sq) return;
    }
    best = std::move(*ball);
  });
  if (!best) throw DegeneracyError({});
  return *best;
}

std::vector<Simplex> cech_at(const std::vector<Point>& points, double r,
                             int max_dim, double slack) {
  std::vector<Simplex> out;
  if (points.empty()) return out;
  const double bound = r + std::abs(r) * slack + slack;
  for_each_subset_of(static_cast<int>(points.size()), max_dim + 1,
                     [&](const Simplex& s) {
                       std::vector<Point> sub;
                       for (int v : s) sub.push_back(points[v]);
                       const double radius =
                           std::sqrt(oracle_meb(sub).radius_sq.get_d());
                       if (radius <= bound) out.push_back(s);
                     });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> betti_gf2(const std::vector<Simplex>& complex,
                                   int up_to) {
  std::set<Simplex> members(complex.begin(), complex.end());
  int top = -1;
  for (const Simplex& s : complex)
    top = std::max(top, static_cast<int>(s.size()) - 1);
  std::vector<std::map<Simplex, int>> index(top + 1);
  for (const Simplex& s : complex)
    index[s.size() - 1].emplace(s, static_cast<int>(index[s.size() - 1].size()));

  // Face closure check, and boundary columns over GF(2).
  std::vector<std::vector<std::vector<int>>> boundary(top + 1);
  for (int k = 1; k <= top; ++k) {
    boundary[k].resize(index[k].size());
    for (const auto& [s, col] : index[k]) {
      Simplex facet;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) facet.push_back(s[j]);
        auto it = index[k - 1].find(facet);
        if (it == index[k - 1].end())
          throw InputError("betti_gf2: complex is not face-closed");
        boundary[k][col].push_back(it->second);
      }
      std::sort(boundary[k][col].begin(), boundary[k][col].end());
    }
  }

  // rank of a GF(2) column matrix by low-pivot reduction.
  auto rank_of = [](std::vector<std::vector<int>> cols) {
    std::map<int, std::vector<int>*> pivot;  // low row -> owning column
    std::size_t rank = 0;
    for (auto& col : cols) {
      while (!col.empty()) {
        auto it = pivot.find(col.back());
        if (it == pivot.end()) break;
        std::vector<int> merged;  // symmetric difference
        std::set_symmetric_difference(col.begin(), col.end(),
                                      it->second->begin(), it->second->end(),
                                      std::back_inserter(merged));
        col = std::move(merged);
      }
      if (!col.empty()) {
        pivot[col.back()] = &col;
        ++rank;
      }
    }
    return rank;
  };

  std::vector<std::size_t> ranks(top + 2, 0);
  for (int k = 1; k <= top; ++k) ranks[k] = rank_of(boundary[k]);
  std::vector<std::size_t> betti;
  for (int k = 0; k <= up_to; ++k) {
    const std::size_t cells = (k <= top) ? index[k].size() : 0;
    const std::size_t r_k = (k >= 1 && k <= top) ? ranks[k] : 0;
    const std::size_t r_k1 = (k + 1 <= top) ? ranks[k + 1] : 0;
    betti.push_back(cells - r_k - r_k1);
  }
  return betti;
}

namespace {

std::vector<Simplex> cells_at(const GradedComplex& g, double r, double s,
                              double slack) {
  const double bound = r + std::abs(r) * slack + slack;
  std::vector<Simplex> out;
  for (const auto& block : g.cells)
    for (const GradedCell& cell : block)
      if (cell.grade.r <= bound && cell.grade.s <= s)
        out.push_back(cell.verts);
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? " " : "") << v[i];
  return ss.str();
}

}  // namespace

EquivalenceReport equivalence_suite(const std::vector<Point>& positions,
                                    const std::vector<double>& gamma) {
  constexpr double kSlack = 1e-9;
  EquivalenceReport report;
  OrderedInput ordered = order_by_gamma(positions, gamma);
  const int d =
      positions.empty() ? 0 : static_cast<int>(positions.front().size());
  const int n = static_cast<int>(positions.size());

  IncrementalComplex complex =
      IncrementalComplex::build(ordered.points, ordered.gamma);
  GradedComplex delcech = grade_delcech(complex);
  GradedComplex del = grade_del(complex);

  // Precompute Cech data once: meb radius and sublevel rank of each subset.
  struct CechCell {
    Simplex verts;
    double radius;
    double s;
  };
  std::vector<CechCell> cech_cells;
  for_each_subset_of(n, d + 2, [&](const Simplex& s) {
    std::vector<Point> sub;
    for (int v : s) sub.push_back(ordered.points[v]);
    double smax = ordered.gamma[s.front()];
    for (int v : s) smax = std::max(smax, ordered.gamma[v]);
    cech_cells.push_back(
        {s, std::sqrt(oracle_meb(sub).radius_sq.get_d()), smax});
  });

  // Critical grid: every radius and gamma value seen anywhere, plus
  // midpoints and sentinels outside the range.
  std::set<double> r_set, s_set;
  for (const CechCell& c : cech_cells) r_set.insert(c.radius);
  for (const GradedComplex* g : {&delcech, &del})
    for (const auto& block : g->cells)
      for (const GradedCell& cell : block) r_set.insert(cell.grade.r);
  for (double v : ordered.gamma) s_set.insert(v);
  auto with_midpoints = [](const std::set<double>& vals) {
    std::vector<double> grid(vals.begin(), vals.end());
    const std::size_t m = grid.size();
    for (std::size_t i = 0; i + 1 < m; ++i)
      grid.push_back((grid[i] + grid[i + 1]) / 2.0);
    if (!grid.empty()) {
      grid.push_back(grid.front() - 1.0);
      grid.push_back(*std::max_element(grid.begin(), grid.end()) + 1.0);
    }
    std::sort(grid.begin(), grid.end());
    return grid;
  };

  for (double r : with_midpoints(r_set)) {
    for (double s : with_midpoints(s_set)) {
      const double bound = r + std::abs(r) * kSlack + kSlack;
      std::vector<Simplex> cech;
      for (const CechCell& c : cech_cells)
        if (c.radius <= bound && c.s <= s) cech.push_back(c.verts);
      std::sort(cech.begin(), cech.end());
      const auto b_cech = betti_gf2(cech, d);
      const auto b_delcech = betti_gf2(cells_at(delcech, r, s, kSlack), d);
      const auto b_del = betti_gf2(cells_at(del, r, s, kSlack), d);
      ++report.grades_checked;
      if (b_cech != b_delcech || b_cech != b_del) {
        report.ok = false;
        std::ostringstream msg;
        msg << "betti mismatch at (r=" << r << ", s=" << s
            << "): cech [" << join(b_cech) << "] delcech ["
            << join(b_delcech) << "] del [" << join(b_del) << "]";
        report.mismatches.push_back(msg.str());
      }
    }
  }
  return report;
}

}  // namespace delbif::oracle
