#include "delbif/functions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "delbif/errors.hpp"

namespace delbif {

namespace {

double euclidean(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double uniform01(std::mt19937_64& rng) {
  // Top 53 bits; bit-identical on every platform, unlike
  // std::uniform_real_distribution.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ParsedRows parse_rows(std::istream& source) {
  ParsedRows out;
  std::string line;
  int lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
          !std::isfinite(v))
        throw InputError("line " + std::to_string(lineno) +
                         ": non-numeric token '" + tok + "'");
      row.push_back(v);
    }
    if (!out.rows.empty() && row.size() != out.rows.front().size())
      throw InputError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(out.rows.front().size()) +
                       " columns, found " + std::to_string(row.size()));
    out.rows.push_back(std::move(row));
    out.lines.push_back(lineno);
  }
  return out;
}

PointCloud parse_input(std::istream& source,
                       std::optional<int> dimension_hint) {
  ParsedRows rows = parse_rows(source);
  PointCloud cloud;
  if (rows.rows.empty()) {
    cloud.dimension = dimension_hint.value_or(0);
    return cloud;
  }
  const int cols = static_cast<int>(rows.rows.front().size());
  if (cols < 2)
    throw InputError("line " + std::to_string(rows.lines.front()) +
                     ": need at least 2 columns (point and function value)");
  if (dimension_hint && *dimension_hint != cols - 1)
    throw InputError("input has " + std::to_string(cols - 1) +
                     " coordinate columns, expected " +
                     std::to_string(*dimension_hint));
  cloud.dimension = cols - 1;
  cloud.positions.reserve(rows.rows.size());
  cloud.gamma.reserve(rows.rows.size());
  for (std::size_t i = 0; i < rows.rows.size(); ++i) {
    std::vector<double>& row = rows.rows[i];
    cloud.gamma.push_back(row.back());
    row.pop_back();
    cloud.positions.push_back(std::move(row));
    cloud.lines.push_back(rows.lines[i]);
  }
  return cloud;
}

std::vector<double> codensity(const std::vector<Point>& positions) {
  const std::size_t n = positions.size();
  if (n < 2) throw InputError("codensity: need at least 2 points");
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(positions[i], positions[j]);
      if (d > 0.0) dists.push_back(d);
    }
  if (dists.empty()) throw InputError("codensity: all points coincide");
  std::sort(dists.begin(), dists.end());
  // Nearest-rank 0.1st percentile: 1-based index ceil(0.001 * M).
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(0.001 * static_cast<double>(dists.size())));
  const double sigma = dists[std::max<std::size_t>(rank, 1) - 1];
  const double inv_sigma_sq = 1.0 / (sigma * sigma);
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(positions[i], positions[j]);
      const double w = std::exp(-d * d * inv_sigma_sq);
      out[i] -= w;
      out[j] -= w;
    }
  return out;
}

std::vector<double> coeccentricity(const std::vector<Point>& positions) {
  const std::size_t n = positions.size();
  if (n == 0) return {};
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(positions[i], positions[j]);
      out[i] -= d;
      out[j] -= d;
    }
  for (double& v : out) v /= static_cast<double>(n);
  return out;
}

std::vector<double> height(const std::vector<Point>& positions) {
  std::vector<double> out;
  out.reserve(positions.size());
  for (const Point& p : positions) out.push_back(p.back());
  return out;
}

std::vector<double> random_gamma(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(uniform01(rng));
  return out;
}

OrderedInput order_by_gamma(const std::vector<Point>& positions,
                            const std::vector<double>& gamma) {
  if (positions.size() != gamma.size())
    throw InputError("order_by_gamma: size mismatch");
  std::vector<int> idx(positions.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return gamma[a] < gamma[b]; });
  OrderedInput out;
  out.points.reserve(idx.size());
  out.gamma.reserve(idx.size());
  for (int i : idx) {
    out.points.push_back(positions[i]);
    out.gamma.push_back(gamma[i]);
  }
  out.original = std::move(idx);
  return out;
}

std::vector<Point> generate_shape(const std::string& shape, std::size_t n,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    if (shape == "circle") {
      const double t = two_pi * uniform01(rng);
      pts.push_back({std::cos(t), std::sin(t)});
    } else if (shape == "sphere") {
      // Uniform via normalized Gaussians.
      std::normal_distribution<double> gauss;
      Point p = {gauss(rng), gauss(rng), gauss(rng)};
      const double norm = std::hypot(p[0], p[1], p[2]);
      for (double& c : p) c /= (norm > 0 ? norm : 1.0);
      pts.push_back(std::move(p));
    } else if (shape == "torus") {
      // Major radius 2, minor radius 1; rejection sampling corrects for
      // the non-uniform surface element in the major angle.
      const double kMajor = 2.0, kMinor = 1.0;
      double u, v;
      do {
        u = two_pi * uniform01(rng);
        v = two_pi * uniform01(rng);
      } while (uniform01(rng) >=
               (kMajor + kMinor * std::cos(v)) / (kMajor + kMinor));
      pts.push_back({(kMajor + kMinor * std::cos(v)) * std::cos(u),
                     (kMajor + kMinor * std::cos(v)) * std::sin(u),
                     kMinor * std::sin(v)});
    } else if (shape == "square") {
      pts.push_back({uniform01(rng), uniform01(rng)});
    } else if (shape == "cube") {
      pts.push_back({uniform01(rng), uniform01(rng), uniform01(rng)});
    } else {
      throw InputError("unknown shape '" + shape + "'");
    }
  }
  // 5% of the points become uniform bounding-box samples.
  const std::size_t d = pts.empty() ? 0 : pts.front().size();
  std::vector<double> lo(d, 0.0), hi(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = pts.front()[j];
    for (const Point& p : pts) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  for (Point& p : pts)
    if (uniform01(rng) < 0.05)
      for (std::size_t j = 0; j < d; ++j)
        p[j] = lo[j] + (hi[j] - lo[j]) * uniform01(rng);
  apply_jitter(pts, 0.05, rng());
  return pts;
}

void apply_jitter(std::vector<Point>& positions, double amplitude,
                  std::uint64_t seed) {
  if (positions.empty() || amplitude == 0.0) return;
  const std::size_t d = positions.front().size();
  std::vector<double> extent(d, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double lo = positions.front()[j], hi = lo;
    for (const Point& p : positions) {
      lo = std::min(lo, p[j]);
      hi = std::max(hi, p[j]);
    }
    extent[j] = (hi > lo) ? hi - lo : 1.0;
  }
  std::mt19937_64 rng(seed);
  for (Point& p : positions)
    for (std::size_t j = 0; j < d; ++j)
      p[j] += extent[j] * amplitude * (2.0 * uniform01(rng) - 1.0);
}

}  // namespace delbif
