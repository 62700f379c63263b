#pragma once

// Point-cloud ingestion and the four function-value generators (codensity,
// L1-coeccentricity, height, seeded random), plus the dataset shapes used
// by the benchmark harness.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "delbif/predicates.hpp"

namespace delbif {

struct PointCloud {
  int dimension = 0;
  std::vector<Point> positions;
  std::vector<double> gamma;
  std::vector<int> lines;  // 1-based input line of each point
};

/// Whitespace-separated numeric rows; `#` and blank lines skipped.
struct ParsedRows {
  std::vector<std::vector<double>> rows;  // all rows have equal width
  std::vector<int> lines;                 // 1-based source line numbers
};

/// Throws InputError (with a line number) on a non-numeric token or a row
/// whose width differs from the first row's.
ParsedRows parse_rows(std::istream& source);

/// Rows of d+1 values: a point in R^d followed by its function value.
/// dimension_hint, when given, is d and must match the column count minus 1.
PointCloud parse_input(std::istream& source,
                       std::optional<int> dimension_hint = std::nullopt);

/// gamma(p) = -sum_{q != p} exp(-|p-q|^2 / sigma^2), sigma the 0.1st
/// percentile (nearest-rank) of the non-zero pairwise distances.
std::vector<double> codensity(const std::vector<Point>& positions);

/// gamma(p) = -(1/n) sum_q |p-q|.
std::vector<double> coeccentricity(const std::vector<Point>& positions);

/// gamma(p) = last coordinate of p.
std::vector<double> height(const std::vector<Point>& positions);

/// n independent uniform [0,1) values from a seeded mt19937_64, drawing the
/// top 53 bits of each output word; identical across platforms.
std::vector<double> random_gamma(std::size_t n, std::uint64_t seed);

/// Points ordered by (gamma, input position), the insertion order of the
/// incremental construction.
struct OrderedInput {
  std::vector<Point> points;
  std::vector<double> gamma;
  std::vector<int> original;  // original[i] = input index of rank i
};
OrderedInput order_by_gamma(const std::vector<Point>& positions,
                            const std::vector<double>& gamma);

/// Benchmark dataset shapes.  circle/square are planar; sphere, torus
/// (R=2, r=1) and cube live in R^3.  5% of the points are replaced by
/// uniform samples from the bounding box and every coordinate receives 5%
/// extent-relative jitter.
std::vector<Point> generate_shape(const std::string& shape, std::size_t n,
                                  std::uint64_t seed);

/// Adds uniform noise in [-amplitude, amplitude] times the per-axis extent
/// to every coordinate.
void apply_jitter(std::vector<Point>& positions, double amplitude,
                  std::uint64_t seed);

}  // namespace delbif
