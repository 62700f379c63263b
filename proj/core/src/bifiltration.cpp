#include "delbif/bifiltration.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "delbif/errors.hpp"
#include "delbif/predicates.hpp"

namespace delbif {

namespace {

// Relative margin for the ball-reuse test: the complementary vertex must be
// strictly interior by this much before a coface's ball is reused for a face.
constexpr double kReuseMargin = 1e-9;

double dist_sq(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double max_gamma(const Simplex& s, const std::vector<double>& gamma) {
  double m = gamma[s.front()];
  for (int v : s) m = std::max(m, gamma[v]);
  return m;
}

/// Assemble a GradedComplex from per-simplex radii: sort each dimension by
/// (r, s, vertex list) and wire boundary indices into the block below.
GradedComplex assemble(
    const IncrementalComplex& c,
    const std::unordered_map<Simplex, double, SimplexHasher>& radius) {
  GradedComplex g;
  const int top = c.top_dimension();
  g.cells.resize(top + 1);
  std::vector<std::map<Simplex, int>> index(top + 1);
  for (int k = 0; k <= top; ++k) {
    auto& block = g.cells[k];
    for (const Simplex& s : c.simplices(k)) {
      GradedCell cell;
      cell.grade = {radius.at(s), max_gamma(s, c.gamma())};
      cell.verts = s;
      block.push_back(std::move(cell));
    }
    std::sort(block.begin(), block.end(),
              [](const GradedCell& a, const GradedCell& b) {
                if (a.grade.r != b.grade.r) return a.grade.r < b.grade.r;
                if (a.grade.s != b.grade.s) return a.grade.s < b.grade.s;
                return a.verts < b.verts;
              });
    for (int i = 0; i < static_cast<int>(block.size()); ++i)
      index[k][block[i].verts] = i;
    if (k == 0) continue;
    for (GradedCell& cell : block) {
      Simplex facet;
      facet.reserve(k);
      for (std::size_t drop = 0; drop < cell.verts.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < cell.verts.size(); ++j)
          if (j != drop) facet.push_back(cell.verts[j]);
        cell.boundary.push_back(index[k - 1].at(facet));
      }
      std::sort(cell.boundary.begin(), cell.boundary.end());
    }
  }
  return g;
}

}  // namespace

bool GradedComplex::operator==(const GradedComplex& other) const {
  if (cells.size() != other.cells.size()) return false;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (cells[k].size() != other.cells[k].size()) return false;
    for (std::size_t i = 0; i < cells[k].size(); ++i) {
      const GradedCell& a = cells[k][i];
      const GradedCell& b = other.cells[k][i];
      if (a.grade.r != b.grade.r || a.grade.s != b.grade.s ||
          a.boundary != b.boundary)
        return false;
    }
  }
  return true;
}

GradedComplex grade_delcech(const IncrementalComplex& c) {
  const auto& pts = c.points();
  const int top = c.top_dimension();
  std::unordered_map<Simplex, double, SimplexHasher> radius;
  std::unordered_map<Simplex, Sphere, SimplexHasher> reusable;
  // Decreasing dimension: a coface whose ball strictly contains the
  // complementary vertex in its interior hands that ball down to the face.
  for (int k = top; k >= 0; --k) {
    std::unordered_map<Simplex, Sphere, SimplexHasher> next_reusable;
    for (const Simplex& s : c.simplices(k)) {
      Sphere ball;
      auto reuse = reusable.find(s);
      if (reuse != reusable.end()) {
        ball = reuse->second;
      } else {
        std::vector<Point> cloud;
        cloud.reserve(s.size());
        for (int v : s) cloud.push_back(pts[v]);
        ball = meb(cloud);
      }
      radius[s] = std::sqrt(ball.radius_sq);
      if (k == 0) continue;
      Simplex facet;
      facet.reserve(k);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        if (dist_sq(pts[s[drop]], ball.center) >=
            ball.radius_sq * (1.0 - kReuseMargin))
          continue;
        facet.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) facet.push_back(s[j]);
        next_reusable.emplace(facet, ball);
      }
    }
    reusable = std::move(next_reusable);
  }
  // Absorb float noise in independently computed balls: a face's radius is
  // never allowed to exceed its coface's.
  for (int k = 1; k <= top; ++k) {
    for (const Simplex& s : c.simplices(k)) {
      double& r = radius.at(s);
      Simplex facet;
      facet.reserve(k);
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        facet.clear();
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) facet.push_back(s[j]);
        r = std::max(r, radius.at(facet));
      }
    }
  }
  return assemble(c, radius);
}

GradedComplex grade_del(const IncrementalComplex& c) {
  const auto& pts = c.points();
  std::unordered_map<Simplex, double, SimplexHasher> radius;
  for (int k = 0; k <= c.top_dimension(); ++k) {
    for (const Simplex& s : c.simplices(k)) {
      const int last = s.back();
      std::vector<Point> circumscribed;
      circumscribed.reserve(s.size() - 1);
      for (std::size_t i = 0; i + 1 < s.size(); ++i)
        circumscribed.push_back(pts[s[i]]);
      std::vector<Point> earlier;
      std::size_t member = 0;
      for (int i = 0; i < last; ++i) {
        if (member < s.size() && s[member] == i) {
          ++member;
          continue;
        }
        earlier.push_back(pts[i]);
      }
      WitnessRadius w = min_witness_radius(circumscribed, pts[last], earlier);
      if (!w.feasible)
        throw std::logic_error(
            "grade_del: witness program infeasible for a stored simplex");
      radius[s] = w.radius();
    }
  }
  return assemble(c, radius);
}

std::vector<Violation> validate(const GradedComplex& g) {
  std::vector<Violation> out;
  for (int k = 1; k < static_cast<int>(g.cells.size()); ++k) {
    const auto& block = g.cells[k];
    const auto& below = g.cells[k - 1];
    for (int i = 0; i < static_cast<int>(block.size()); ++i) {
      const GradedCell& cell = block[i];
      bool indices_ok = true;
      if (cell.boundary.size() != static_cast<std::size_t>(k + 1)) {
        std::ostringstream msg;
        msg << "dimension " << k << " cell " << i << " has "
            << cell.boundary.size() << " facets, expected " << k + 1;
        out.push_back({Violation::BOUNDARY_CARDINALITY, k, i, msg.str()});
        indices_ok = false;  // a truncated boundary makes the GF(2) check moot
      }
      for (int f : cell.boundary) {
        if (f < 0 || f >= static_cast<int>(below.size())) {
          std::ostringstream msg;
          msg << "dimension " << k << " cell " << i << " facet index " << f
              << " out of range";
          out.push_back({Violation::BOUNDARY_CARDINALITY, k, i, msg.str()});
          indices_ok = false;
          continue;
        }
        const Bigrade& fg = below[f].grade;
        if (fg.r > cell.grade.r || fg.s > cell.grade.s) {
          std::ostringstream msg;
          msg << "dimension " << k << " cell " << i << " grade ("
              << cell.grade.r << ", " << cell.grade.s
              << ") below facet " << f << " grade (" << fg.r << ", " << fg.s
              << ")";
          out.push_back({Violation::MONOTONICITY, k, i, msg.str()});
        }
      }
      if (k < 2 || !indices_ok) continue;
      // GF(2): every (k-2)-face must appear an even number of times.
      std::unordered_set<int> odd;
      for (int f : cell.boundary)
        for (int ff : below[f].boundary)
          if (!odd.insert(ff).second) odd.erase(ff);
      if (!odd.empty()) {
        std::ostringstream msg;
        msg << "dimension " << k << " cell " << i
            << " has nonzero boundary-of-boundary over GF(2)";
        out.push_back({Violation::BOUNDARY_SQUARED, k, i, msg.str()});
      }
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_scc2020(const GradedComplex& g, std::ostream& sink,
                   const std::vector<std::string>& metadata) {
  sink << "scc2020\n";
  for (const std::string& line : metadata) sink << "# " << line << "\n";
  sink << "2\n";
  const int top = static_cast<int>(g.cells.size()) - 1;
  for (int k = top; k >= 0; --k) sink << g.cells[k].size() << " ";
  sink << "0\n";
  for (int k = top; k >= 0; --k) {
    for (const GradedCell& cell : g.cells[k]) {
      sink << format_double(cell.grade.r) << " " << format_double(cell.grade.s)
           << " ;";
      for (int f : cell.boundary) sink << " " << f;
      sink << "\n";
    }
  }
}

namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  std::ostringstream msg;
  msg << "scc2020 parse error at line " << line << ": " << what;
  throw InputError(msg.str());
}

/// Next line that is neither blank nor a comment; false at end of input.
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos || line[i] == '#') continue;
    return true;
  }
  return false;
}

double parse_grade(const std::string& tok, int lineno) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    parse_error(lineno, "non-numeric grade '" + tok + "'");
  return v;
}

}  // namespace

GradedComplex read_scc2020(std::istream& source) {
  int lineno = 0;
  std::string line;
  if (!std::getline(source, line)) parse_error(1, "empty input");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "scc2020") parse_error(lineno, "missing 'scc2020' header");

  if (!next_content_line(source, line, lineno))
    parse_error(lineno + 1, "missing parameter-count line");
  if (line != "2")
    parse_error(lineno, "expected 2 parameter directions, got '" + line + "'");

  if (!next_content_line(source, line, lineno))
    parse_error(lineno + 1, "missing block-size line");
  std::vector<long> counts;
  {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      long n = 0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), n);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || n < 0)
        parse_error(lineno, "bad block size '" + tok + "'");
      counts.push_back(n);
    }
  }
  if (counts.empty() || counts.back() != 0)
    parse_error(lineno, "block-size line must end with the terminal 0");
  counts.pop_back();

  const int dims = static_cast<int>(counts.size());
  GradedComplex g;
  g.cells.resize(dims);
  for (int b = 0; b < dims; ++b) {
    const int k = dims - 1 - b;  // blocks run from highest dimension down
    const long below = (k > 0) ? counts[b + 1] : 0;
    for (long c = 0; c < counts[b]; ++c) {
      if (!next_content_line(source, line, lineno))
        parse_error(lineno + 1, "unexpected end of input inside a block");
      std::istringstream ss(line);
      std::string tr, ts, sep;
      if (!(ss >> tr >> ts >> sep) || sep != ";")
        parse_error(lineno, "expected 'r s ; facets...'");
      GradedCell cell;
      cell.grade.r = parse_grade(tr, lineno);
      cell.grade.s = parse_grade(ts, lineno);
      std::string tok;
      while (ss >> tok) {
        long f = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), f);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
          parse_error(lineno, "bad facet index '" + tok + "'");
        if (f < 0 || f >= below)
          parse_error(lineno, "facet index " + tok +
                                  " out of range for the next block");
        cell.boundary.push_back(static_cast<int>(f));
      }
      g.cells[k].push_back(std::move(cell));
    }
  }
  if (next_content_line(source, line, lineno))
    parse_error(lineno, "trailing content after the last block");
  return g;
}

}  // namespace delbif
