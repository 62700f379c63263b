#pragma once

// Test-local exact-rational helpers, written independently of the library's
// solvers so the suites can cross-check rather than self-confirm.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace testsupport {

using Rat = mpq_class;
using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

struct Affine {
  bool consistent = false;
  Vec particular;
  std::vector<Vec> null_basis;
};

// Gauss-Jordan with exact pivoting; free variables get value 0 in the
// particular solution.
inline Affine gauss(Mat a, Vec b, std::size_t nvars) {
  Affine out;
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_of_col(nvars, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nvars && rank < rows; ++col) {
    std::size_t pr = rank;
    while (pr < rows && a[pr][col] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[rank]);
    std::swap(b[pr], b[rank]);
    const Rat inv = 1 / a[rank][col];
    for (std::size_t j = 0; j < nvars; ++j) a[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (std::size_t j = 0; j < nvars; ++j) a[r][j] -= f * a[rank][j];
      b[r] -= f * b[rank];
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (b[r] != 0) return out;
  out.consistent = true;
  out.particular.assign(nvars, Rat(0));
  for (std::size_t col = 0; col < nvars; ++col)
    if (pivot_of_col[col] != SIZE_MAX)
      out.particular[col] = b[pivot_of_col[col]];
  for (std::size_t col = 0; col < nvars; ++col) {
    if (pivot_of_col[col] != SIZE_MAX) continue;
    Vec dir(nvars, Rat(0));
    dir[col] = 1;
    for (std::size_t c2 = 0; c2 < nvars; ++c2)
      if (pivot_of_col[c2] != SIZE_MAX) dir[c2] = -a[pivot_of_col[c2]][col];
    out.null_basis.push_back(std::move(dir));
  }
  return out;
}

// Witness-radius reference: minimize r^2 = b + |a|^2/4 over the lifted
// sphere coordinates x = (a, b), subject to x being on the pencil of
// sigma_prime, covering `cover`, and avoiding every point of `avoid`.
// Solved by full enumeration of active-inequality subsets; each candidate
// is the exact minimizer on its affine piece and is kept only if it
// satisfies every constraint.  Returns the minimum r^2, or nullopt when
// the polyhedron is empty.
inline std::optional<Rat> qp_witness_oracle(
    const std::vector<std::vector<double>>& sigma_prime,
    const std::vector<double>& cover,
    const std::vector<std::vector<double>>& avoid) {
  const std::size_t d = cover.size();
  const std::size_t nvars = d + 1;
  auto lifted_row = [&](const std::vector<double>& p) {
    Vec row;
    Rat rhs = 0;
    for (double c : p) {
      row.emplace_back(c);
      rhs += Rat(c) * Rat(c);
    }
    row.emplace_back(1);
    return std::pair<Vec, Rat>(std::move(row), std::move(rhs));
  };

  Mat eq_a;
  Vec eq_b;
  for (const auto& p : sigma_prime) {
    auto [row, rhs] = lifted_row(p);
    eq_a.push_back(std::move(row));
    eq_b.push_back(std::move(rhs));
  }
  struct Ineq {
    Vec row;
    Rat rhs;
    bool is_cover;  // cover: dot >= rhs; avoid: dot <= rhs
  };
  std::vector<Ineq> ineqs;
  {
    auto [row, rhs] = lifted_row(cover);
    ineqs.push_back({std::move(row), std::move(rhs), true});
  }
  for (const auto& p : avoid) {
    auto [row, rhs] = lifted_row(p);
    ineqs.push_back({std::move(row), std::move(rhs), false});
  }

  auto dot = [](const Vec& u, const Vec& v) {
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  auto admissible = [&](const Vec& x) {
    for (const Ineq& c : ineqs) {
      const Rat v = dot(c.row, x);
      if (c.is_cover ? v < c.rhs : v > c.rhs) return false;
    }
    return true;
  };
  auto objective = [&](const Vec& x) {
    Rat s = x[d];
    for (std::size_t j = 0; j < d; ++j) s += x[j] * x[j] / 4;
    return s;
  };

  // Minimize the objective on the affine set of the given tight rows; the
  // objective restricted to the set is quadratic in the free parameters t.
  auto minimize_on = [&](Mat a, Vec b) -> std::optional<Vec> {
    Affine sol = gauss(std::move(a), std::move(b), nvars);
    if (!sol.consistent) return std::nullopt;
    const std::size_t f = sol.null_basis.size();
    if (f == 0) return sol.particular;
    Mat h(f, Vec(f, Rat(0)));
    Vec rhs(f, Rat(0));
    for (std::size_t i = 0; i < f; ++i) {
      Rat gi = sol.null_basis[i][d];
      for (std::size_t k = 0; k < d; ++k)
        gi += sol.particular[k] * sol.null_basis[i][k] / 2;
      rhs[i] = -gi;
      for (std::size_t j = 0; j < f; ++j) {
        Rat hij = 0;
        for (std::size_t k = 0; k < d; ++k)
          hij += sol.null_basis[i][k] * sol.null_basis[j][k];
        h[i][j] = hij / 2;
      }
    }
    Affine ts = gauss(std::move(h), std::move(rhs), f);
    if (!ts.consistent || !ts.null_basis.empty())
      return std::nullopt;  // flat direction: no minimizer on this piece
    Vec x = sol.particular;
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t k = 0; k < nvars; ++k)
        x[k] += ts.particular[i] * sol.null_basis[i][k];
    return x;
  };

  std::optional<Rat> best;
  const std::size_t m = ineqs.size();
  std::vector<std::size_t> subset;
  auto consider = [&]() {
    Mat a = eq_a;
    Vec b = eq_b;
    for (std::size_t i : subset) {
      a.push_back(ineqs[i].row);
      b.push_back(ineqs[i].rhs);
    }
    if (auto x = minimize_on(std::move(a), std::move(b))) {
      if (admissible(*x)) {
        Rat val = objective(*x);
        if (!best || val < *best) best = val;
      }
    }
  };
  auto rec = [&](auto&& self, std::size_t next) -> void {
    consider();
    if (subset.size() == nvars) return;
    for (std::size_t i = next; i < m; ++i) {
      subset.push_back(i);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// Deterministic uniform doubles in [0,1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace testsupport
