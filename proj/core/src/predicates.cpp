#include "delbif/predicates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "delbif/errors.hpp"
#include "delbif/linalg.hpp"

namespace delbif {

namespace {

Sign sign_of(double v) {
  if (v > 0) return Sign::POSITIVE;
  if (v < 0) return Sign::NEGATIVE;
  return Sign::ZERO;
}

Sign sign_of(const mpq_class& v) {
  int s = sgn(v);
  return s > 0 ? Sign::POSITIVE : (s < 0 ? Sign::NEGATIVE : Sign::ZERO);
}

mpq_class dot(const RationalPoint& a, const RationalPoint& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpq_class norm_sq(const RationalPoint& a) { return dot(a, a); }

void check_dimensions(const std::vector<Point>& pts, std::size_t d,
                      const char* what) {
  for (const Point& p : pts)
    if (p.size() != d)
      throw InputError(std::string(what) + ": inconsistent point dimension");
}

/// Sign of the determinant, exact.  The float stage is conclusive when
/// |det| exceeds a roundoff bound derived from the permanent of the entry
/// magnitude matrix (which also covers the rounding the entries carry);
/// the fallback rebuilds the matrix exactly from the original inputs.
template <class ExactBuilder>
Sign det_sign_filtered(const linalg::Matrix<double>& m,
                       const linalg::Matrix<double>& entry_mag,
                       double headroom, ExactBuilder&& build_exact) {
  const std::size_t n = m.size();
  if (n <= 12) {
    auto [det, mag] = linalg::filtered_determinant(m, entry_mag);
    const double err = mag * static_cast<double>(n * n) * headroom *
                       std::numeric_limits<double>::epsilon();
    if (std::abs(det) > err) return sign_of(det);
  }
  return sign_of(linalg::determinant(build_exact()));
}

}  // namespace

namespace linalg {

FilteredDet filtered_determinant(const Matrix<double>& m,
                                 const Matrix<double>& entry_mag) {
  const unsigned n = static_cast<unsigned>(m.size());
  if (n == 0) return {1.0, 1.0};
  std::vector<double> det(std::size_t(1) << n, 0.0);
  std::vector<double> mag(std::size_t(1) << n, 0.0);
  det[0] = 1.0;
  mag[0] = 1.0;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    const unsigned row = static_cast<unsigned>(std::popcount(s)) - 1;
    double dsum = 0.0, msum = 0.0;
    int parity = (row % 2 == 0) ? 1 : -1;  // cofactor sign (-1)^(row+pos)
    for (unsigned j = 0; j < n; ++j) {
      if (!(s & (1u << j))) continue;
      const std::uint32_t sub = s & ~(1u << j);
      dsum += parity * m[row][j] * det[sub];
      msum += entry_mag[row][j] * mag[sub];
      parity = -parity;
    }
    det[s] = dsum;
    mag[s] = msum;
  }
  return {det.back(), mag.back()};
}

}  // namespace linalg

double Sphere::radius() const { return std::sqrt(radius_sq); }

double WitnessRadius::radius() const {
  return std::sqrt(radius_sq.get_d());
}

Sign orientation(const std::vector<Point>& pts) {
  if (pts.empty()) throw InputError("orientation: no points");
  const std::size_t d = pts[0].size();
  if (d < 1) throw InputError("orientation: dimension must be >= 1");
  if (pts.size() != d + 1)
    throw InputError("orientation: expected d+1 points");
  check_dimensions(pts, d, "orientation");
  linalg::Matrix<double> m(d, std::vector<double>(d));
  linalg::Matrix<double> em(d, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      m[i][j] = pts[i + 1][j] - pts[0][j];
      em[i][j] = std::abs(pts[i + 1][j]) + std::abs(pts[0][j]);
    }
  }
  return det_sign_filtered(m, em, 8.0, [&] {
    linalg::Matrix<mpq_class> exact(d, std::vector<mpq_class>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        exact[i][j] = mpq_class(pts[i + 1][j]) - mpq_class(pts[0][j]);
    return exact;
  });
}

SideOfSphere in_sphere(const std::vector<Point>& defining, const Point& q) {
  const std::size_t d = q.size();
  if (defining.size() != d + 1)
    throw InputError("in_sphere: expected d+1 defining points");
  check_dimensions(defining, d, "in_sphere");
  const Sign orient = orientation(defining);
  if (orient == Sign::ZERO) throw DegeneracyError({});

  // Lifted difference matrix: rows (p_i - p_0, |p_i|^2 - |p_0|^2), then q.
  linalg::Matrix<double> m(d + 1, std::vector<double>(d + 1));
  linalg::Matrix<double> em(d + 1, std::vector<double>(d + 1));
  auto fill_row = [&](std::size_t row, const Point& p) {
    double lift = 0.0, lift_mag = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      m[row][j] = p[j] - defining[0][j];
      em[row][j] = std::abs(p[j]) + std::abs(defining[0][j]);
      lift += p[j] * p[j] - defining[0][j] * defining[0][j];
      lift_mag += p[j] * p[j] + defining[0][j] * defining[0][j];
    }
    m[row][d] = lift;
    em[row][d] = lift_mag;
  };
  for (std::size_t i = 1; i <= d; ++i) fill_row(i - 1, defining[i]);
  fill_row(d, q);

  // Extra headroom in the filter for the inexact lifted column.
  const Sign s = det_sign_filtered(m, em, 64.0, [&] {
    linalg::Matrix<mpq_class> exact(d + 1, std::vector<mpq_class>(d + 1));
    auto fill_exact = [&](std::size_t row, const Point& p) {
      mpq_class lift = 0;
      for (std::size_t j = 0; j < d; ++j) {
        mpq_class pj(p[j]), oj(defining[0][j]);
        exact[row][j] = pj - oj;
        lift += pj * pj - oj * oj;
      }
      exact[row][d] = lift;
    };
    for (std::size_t i = 1; i <= d; ++i) fill_exact(i - 1, defining[i]);
    fill_exact(d, q);
    return exact;
  });

  if (s == Sign::ZERO) return SideOfSphere::ON;
  const int prod = static_cast<int>(s) * static_cast<int>(orient);
  return prod < 0 ? SideOfSphere::INSIDE : SideOfSphere::OUTSIDE;
}

namespace {

// Center in the affine hull: c = p0 + sum t_i (p_i - p0) with
// 2 <u_i, sum t_j u_j> = |u_i|^2.
template <class T>
std::optional<std::pair<std::vector<T>, T>> circumsphere_impl(
    const std::vector<std::vector<T>>& pts) {
  const std::size_t k = pts.size();
  const std::size_t d = pts[0].size();
  const std::size_t m = k - 1;
  std::vector<std::vector<T>> u(m, std::vector<T>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) u[i][j] = pts[i + 1][j] - pts[0][j];
  linalg::Matrix<T> gram(m, std::vector<T>(m));
  std::vector<T> rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    T nsq(0);
    for (std::size_t j = 0; j < d; ++j) nsq += u[i][j] * u[i][j];
    rhs[i] = nsq;
    for (std::size_t j = 0; j <= i; ++j) {
      T g(0);
      for (std::size_t c = 0; c < d; ++c) g += u[i][c] * u[j][c];
      gram[i][j] = gram[j][i] = g + g;  // 2 <u_i, u_j>
    }
  }
  std::vector<T> center(pts[0]);
  T radius_sq(0);
  if (m > 0) {
    auto t = linalg::solve(std::move(gram), std::move(rhs));
    if (!t) return std::nullopt;
    for (std::size_t j = 0; j < d; ++j) {
      T off(0);
      for (std::size_t i = 0; i < m; ++i) off += (*t)[i] * u[i][j];
      center[j] += off;
      radius_sq += off * off;
    }
  }
  return std::make_pair(std::move(center), std::move(radius_sq));
}

}  // namespace

Sphere smallest_circumsphere(const std::vector<Point>& pts) {
  if (pts.empty()) throw InputError("smallest_circumsphere: no points");
  const std::size_t d = pts[0].size();
  if (pts.size() > d + 1)
    throw InputError("smallest_circumsphere: more than d+1 points");
  check_dimensions(pts, d, "smallest_circumsphere");
  auto res = circumsphere_impl<double>(pts);
  if (!res) throw DegeneracyError({});
  return Sphere{std::move(res->first), res->second};
}

std::optional<RationalSphere> smallest_circumsphere_exact(
    const std::vector<RationalPoint>& pts) {
  auto res = circumsphere_impl<mpq_class>(pts);
  if (!res) return std::nullopt;
  return RationalSphere{std::move(res->first), std::move(res->second)};
}

namespace {

constexpr double kBallSlack = 1e-12;

struct WelzlBall {
  Point center;
  double radius_sq = -1.0;
  bool contains(const Point& p) const {
    if (radius_sq < 0) return false;
    double dist_sq = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      double dj = p[j] - center[j];
      dist_sq += dj * dj;
    }
    return dist_sq <= radius_sq + kBallSlack * (radius_sq + 1.0);
  }
};

WelzlBall ball_of_boundary(const std::vector<Point>& boundary) {
  if (boundary.empty()) return {};
  auto res = circumsphere_impl<double>(boundary);
  if (!res) return {};  // near-dependent boundary; caller's checks recover
  return WelzlBall{std::move(res->first), res->second};
}

WelzlBall welzl_mtf(std::vector<const Point*>& pts, std::size_t end,
                    std::vector<Point>& boundary, std::size_t d) {
  WelzlBall ball = ball_of_boundary(boundary);
  if (boundary.size() == d + 1) return ball;
  for (std::size_t i = 0; i < end; ++i) {
    if (ball.contains(*pts[i])) continue;
    boundary.push_back(*pts[i]);
    ball = welzl_mtf(pts, i, boundary, d);
    boundary.pop_back();
    const Point* moved = pts[i];
    for (std::size_t j = i; j > 0; --j) pts[j] = pts[j - 1];
    pts[0] = moved;
  }
  return ball;
}

}  // namespace

Sphere meb(const std::vector<Point>& pts) {
  if (pts.empty()) throw InputError("meb: no points");
  const std::size_t d = pts[0].size();
  check_dimensions(pts, d, "meb");
  std::vector<const Point*> work(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) work[i] = &pts[i];
  // Deterministic shuffle; the result is order-independent, the work is not.
  std::mt19937 rng(0x5eb1f2a3u);
  for (std::size_t i = work.size(); i > 1; --i)
    std::swap(work[i - 1], work[rng() % i]);
  std::vector<Point> boundary;
  boundary.reserve(d + 1);
  WelzlBall ball = welzl_mtf(work, work.size(), boundary, d);
  if (ball.radius_sq < 0) ball = WelzlBall{pts[0], 0.0};
  return Sphere{std::move(ball.center), ball.radius_sq};
}

namespace {

// The quadratic program lives in x = (a, b) in R^{d+1}, where a sphere with
// center c and radius r maps to a = 2c, b = r^2 - |c|^2.  A point p is on
// the sphere iff <p, a> + b = |p|^2, inside iff ">", outside iff "<".
// Objective: r^2 = b + |a|^2 / 4.

struct QpRow {
  RationalPoint coeff;  // length d+1
  mpq_class rhs;
};

QpRow row_for(const Point& p) {
  QpRow r;
  r.coeff = to_rational(p);
  r.coeff.emplace_back(1);
  r.rhs = norm_sq(to_rational(p));
  return r;
}

mpq_class objective(const RationalPoint& x, std::size_t d) {
  mpq_class asq = 0;
  for (std::size_t j = 0; j < d; ++j) asq += x[j] * x[j];
  return x[d] + asq / 4;
}

// Minimize the objective subject to the given rows held as equalities.
// Returns nullopt when the system is inconsistent or the reduced Hessian
// is singular (that active set cannot define the optimum).
std::optional<RationalPoint> equality_qp(const std::vector<QpRow>& rows,
                                         std::size_t d) {
  const std::size_t nvars = d + 1;
  linalg::Matrix<mpq_class> a;
  std::vector<mpq_class> b;
  for (const QpRow& r : rows) {
    a.push_back(r.coeff);
    b.push_back(r.rhs);
  }
  auto sol = linalg::affine_solve(std::move(a), std::move(b), nvars);
  if (!sol.consistent) return std::nullopt;
  const std::size_t f = sol.null_basis.size();
  if (f == 0) return sol.particular;
  // Reduced problem: H t = -g with H_ij = <N_i^a, N_j^a>/2,
  // g_i = <x0^a, N_i^a>/2 + N_i^b.
  linalg::Matrix<mpq_class> h(f, std::vector<mpq_class>(f));
  std::vector<mpq_class> g(f);
  for (std::size_t i = 0; i < f; ++i) {
    mpq_class gi = sol.null_basis[i][d];
    for (std::size_t k = 0; k < d; ++k)
      gi += sol.particular[k] * sol.null_basis[i][k] / 2;
    g[i] = -gi;
    for (std::size_t j = 0; j <= i; ++j) {
      mpq_class hij = 0;
      for (std::size_t k = 0; k < d; ++k)
        hij += sol.null_basis[i][k] * sol.null_basis[j][k];
      h[i][j] = h[j][i] = hij / 2;
    }
  }
  auto t = linalg::solve(std::move(h), std::move(g));
  if (!t) return std::nullopt;
  RationalPoint x = sol.particular;
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t k = 0; k < nvars; ++k) x[k] += (*t)[i] * sol.null_basis[i][k];
  return x;
}

}  // namespace

WitnessRadius min_witness_radius(const std::vector<Point>& sigma_prime,
                                 const Point& must_cover,
                                 const std::vector<Point>& must_avoid) {
  const std::size_t d = must_cover.size();
  if (sigma_prime.size() > d + 1)
    throw InputError("min_witness_radius: more than d+1 circumscribed points");
  check_dimensions(sigma_prime, d, "min_witness_radius");
  check_dimensions(must_avoid, d, "min_witness_radius");

  std::vector<QpRow> equalities;
  for (const Point& p : sigma_prime) equalities.push_back(row_for(p));
  const QpRow cover = row_for(must_cover);

  // Free dimension of the sphere pencil; also validates affine independence.
  std::size_t free_dim;
  {
    linalg::Matrix<mpq_class> a;
    std::vector<mpq_class> b;
    for (const QpRow& r : equalities) {
      a.push_back(r.coeff);
      b.push_back(r.rhs);
    }
    auto sol = linalg::affine_solve(std::move(a), std::move(b), d + 1);
    if (!sol.consistent || sol.null_basis.size() != d + 1 - sigma_prime.size())
      throw DegeneracyError({});
    free_dim = sol.null_basis.size();
  }

  // cover is >=, avoids are <= in the lifted coordinates.
  auto violation_cover = [&](const RationalPoint& x) -> mpq_class {
    return cover.rhs - dot(cover.coeff, x);  // positive when violated
  };
  auto violation_avoid = [&](const QpRow& r,
                             const RationalPoint& x) -> mpq_class {
    return dot(r.coeff, x) - r.rhs;  // positive when violated
  };

  // Solve with inequality working set W (indices into `ineqs`).  The optimum
  // of a strictly convex QP over a nonempty polyhedron is the minimizer on
  // the span of some <= free_dim linearly independent active constraints, so
  // enumerating active subsets up to that size is complete.
  std::vector<QpRow> ineqs = {cover};
  std::vector<bool> ineq_is_cover = {true};

  auto solve_working_set = [&]() -> std::optional<RationalPoint> {
    const std::size_t m = ineqs.size();
    std::optional<RationalPoint> best;
    mpq_class best_val;
    std::vector<std::size_t> subset;
    auto feasible_here = [&](const RationalPoint& x) {
      for (std::size_t i = 0; i < m; ++i) {
        const mpq_class v = ineq_is_cover[i] ? violation_cover(x)
                                             : violation_avoid(ineqs[i], x);
        if (v > 0) return false;
      }
      return true;
    };
    auto consider = [&](const RationalPoint& x) {
      if (!feasible_here(x)) return;
      mpq_class val = objective(x, d);
      if (!best || val < best_val) {
        best = x;
        best_val = val;
      }
    };
    auto recurse = [&](auto&& self, std::size_t start) -> void {
      std::vector<QpRow> rows = equalities;
      for (std::size_t i : subset) rows.push_back(ineqs[i]);
      if (auto x = equality_qp(rows, d)) consider(*x);
      if (subset.size() == free_dim) return;
      for (std::size_t i = start; i < m; ++i) {
        subset.push_back(i);
        self(self, i + 1);
        subset.pop_back();
      }
    };
    recurse(recurse, 0);
    return best;
  };

  // Violated-constraint loop: avoid constraints enter the working set only
  // when violated by the current relaxed optimum.
  std::vector<bool> in_working(must_avoid.size(), false);
  for (;;) {
    auto x = solve_working_set();
    if (!x) return WitnessRadius{false, 0};
    std::ptrdiff_t worst = -1;
    mpq_class worst_v = 0;
    for (std::size_t i = 0; i < must_avoid.size(); ++i) {
      if (in_working[i]) continue;
      mpq_class v = violation_avoid(row_for(must_avoid[i]), *x);
      if (v > worst_v) {
        worst_v = v;
        worst = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (worst < 0) {
      WitnessRadius out;
      out.feasible = true;
      out.radius_sq = objective(*x, d);
      return out;
    }
    in_working[static_cast<std::size_t>(worst)] = true;
    ineqs.push_back(row_for(must_avoid[static_cast<std::size_t>(worst)]));
    ineq_is_cover.push_back(false);
  }
}

}  // namespace delbif
