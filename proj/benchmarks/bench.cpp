// Microbenchmarks for the two hot phases: complex construction and
// meb grading.

#include <benchmark/benchmark.h>

#include "delbif/bifiltration.hpp"
#include "delbif/functions.hpp"
#include "delbif/incremental_complex.hpp"

namespace {

delbif::OrderedInput make_input(const std::string& shape, std::size_t n,
                                const std::string& function) {
  std::vector<delbif::Point> pts = delbif::generate_shape(shape, n, 7);
  std::vector<double> gamma;
  if (function == "height") {
    gamma = delbif::height(pts);
  } else if (function == "coeccentricity") {
    gamma = delbif::coeccentricity(pts);
  } else {
    gamma = delbif::random_gamma(pts.size(), 7);
  }
  return delbif::order_by_gamma(pts, gamma);
}

void BM_build(benchmark::State& state, const std::string& shape,
              const std::string& function) {
  const auto n = static_cast<std::size_t>(state.range(0));
  delbif::OrderedInput input = make_input(shape, n, function);
  for (auto _ : state) {
    auto complex = delbif::IncrementalComplex::build(input.points, input.gamma);
    benchmark::DoNotOptimize(complex.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}

void BM_grade_delcech(benchmark::State& state, const std::string& shape,
                      const std::string& function) {
  const auto n = static_cast<std::size_t>(state.range(0));
  delbif::OrderedInput input = make_input(shape, n, function);
  auto complex = delbif::IncrementalComplex::build(input.points, input.gamma);
  for (auto _ : state) {
    auto graded = delbif::grade_delcech(complex);
    benchmark::DoNotOptimize(graded.cells.size());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(complex.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_build, square_random, "square", "random")
    ->Arg(200)
    ->Arg(1000);
BENCHMARK_CAPTURE(BM_build, torus_height, "torus", "height")
    ->Arg(200)
    ->Arg(1000);
BENCHMARK_CAPTURE(BM_grade_delcech, square_random, "square", "random")
    ->Arg(200)
    ->Arg(1000);

BENCHMARK_MAIN();
