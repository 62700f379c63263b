#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "delbif/errors.hpp"
#include "delbif/functions.hpp"
#include "support.hpp"

using delbif::Point;

TEST_CASE("parse_input basic row") {
  std::istringstream in("0 0 1.5\n");
  auto pc = delbif::parse_input(in, 2);
  REQUIRE(pc.positions.size() == 1);
  CHECK(pc.dimension == 2);
  CHECK(pc.positions[0] == Point{0, 0});
  CHECK(pc.gamma[0] == doctest::Approx(1.5));
}

TEST_CASE("parse_input infers dimension and skips comments") {
  std::istringstream in("# header\n\n1 2 3 0.5\n4 5 6 0.25\n");
  auto pc = delbif::parse_input(in);
  CHECK(pc.dimension == 3);
  REQUIRE(pc.positions.size() == 2);
  CHECK(pc.lines == std::vector<int>{3, 4});
}

TEST_CASE("parse_input errors name the offending line") {
  auto expect_error = [](const std::string& text, const std::string& frag) {
    std::istringstream in(text);
    try {
      delbif::parse_input(in);
      FAIL("expected InputError for: ", text);
    } catch (const delbif::InputError& e) {
      CHECK(std::string(e.what()).find(frag) != std::string::npos);
    }
  };
  expect_error("1 2 3\n4 5\n", "line 2");        // width mismatch
  expect_error("1 2 3\n4 xyz 6\n", "line 2");    // non-numeric token
  expect_error("7\n", "line 1");                 // d+1 < 2
}

TEST_CASE("parse_input empty file yields an empty cloud") {
  std::istringstream in("# nothing here\n\n");
  auto pc = delbif::parse_input(in);
  CHECK(pc.positions.empty());
}

TEST_CASE("parse_input dimension hint conflicts are rejected") {
  std::istringstream in("1 2 3 0.5\n");
  CHECK_THROWS_AS(delbif::parse_input(in, 2), delbif::InputError);
}

TEST_CASE("codensity on two points") {
  // With exactly one nonzero distance D, sigma = D, so gamma = -e^{-1}.
  auto g = delbif::codensity({{0, 0}, {3, 4}});
  REQUIRE(g.size() == 2);
  CHECK(g[0] == doctest::Approx(-std::exp(-1.0)).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(g[0]));
}

TEST_CASE("codensity on the unit square") {
  auto g = delbif::codensity({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const double expected = -(2 * std::exp(-1.0) + std::exp(-2.0));
  for (double v : g) CHECK(v == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("codensity of a far-away point tends to zero from below") {
  auto g = delbif::codensity({{0, 0}, {0.5, 0}, {3, 0}});
  CHECK(g[2] < 0.0);
  CHECK(g[2] > -1e-6);
}

TEST_CASE("coeccentricity examples") {
  {
    auto g = delbif::coeccentricity({{0, 0}, {2, 0}});
    CHECK(g[0] == doctest::Approx(-1.0));
    CHECK(g[1] == doctest::Approx(-1.0));
  }
  {
    auto g = delbif::coeccentricity({{5, 5}});
    CHECK(g[0] == 0.0);
  }
  {
    auto g = delbif::coeccentricity({{0}, {1}, {2}});
    CHECK(g[0] == doctest::Approx(-1.0));
    CHECK(g[1] == doctest::Approx(-2.0 / 3.0));
    CHECK(g[2] == doctest::Approx(-1.0));
  }
}

TEST_CASE("height returns the last coordinate") {
  auto g = delbif::height({{3, 7}, {-1, 0.25}});
  CHECK(g == std::vector<double>{7, 0.25});
}

TEST_CASE("random_gamma is deterministic and in range") {
  auto a = delbif::random_gamma(1000, 42);
  auto b = delbif::random_gamma(1000, 42);
  CHECK(a == b);
  for (double v : a) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  CHECK(a != delbif::random_gamma(1000, 43));
}

TEST_CASE("order_by_gamma sorts stably") {
  auto ord = delbif::order_by_gamma({{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                    {2.0, 1.0, 1.0, 0.5});
  CHECK(ord.original == std::vector<int>{3, 1, 2, 0});
  CHECK(ord.gamma == std::vector<double>{0.5, 1.0, 1.0, 2.0});
  CHECK(ord.points[0] == Point{3, 0});
}

TEST_CASE("intrinsic functions are rigid-motion invariant") {
  std::mt19937_64 rng(1234);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) {
    pts.push_back({10.0 * testsupport::uniform01(rng) - 5.0,
                   10.0 * testsupport::uniform01(rng) - 5.0});
  }
  const double theta = 2.1, tx = 13.5, ty = -4.25;
  std::vector<Point> moved;
  for (const Point& p : pts) {
    moved.push_back({std::cos(theta) * p[0] - std::sin(theta) * p[1] + tx,
                     std::sin(theta) * p[0] + std::cos(theta) * p[1] + ty});
  }
  auto check_close = [](const std::vector<double>& a,
                        const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
  };
  check_close(delbif::codensity(pts), delbif::codensity(moved));
  check_close(delbif::coeccentricity(pts), delbif::coeccentricity(moved));
}

TEST_CASE("generate_shape is deterministic with the right ambient dimension") {
  auto a = delbif::generate_shape("torus", 50, 9);
  auto b = delbif::generate_shape("torus", 50, 9);
  CHECK(a == b);
  REQUIRE(a.size() == 50);
  CHECK(a[0].size() == 3);
  CHECK(delbif::generate_shape("circle", 20, 9)[0].size() == 2);
  CHECK(delbif::generate_shape("square", 20, 9)[0].size() == 2);
  CHECK(delbif::generate_shape("sphere", 20, 9)[0].size() == 3);
  CHECK(delbif::generate_shape("cube", 20, 9)[0].size() == 3);
}

TEST_CASE("apply_jitter perturbs within the requested amplitude") {
  std::vector<Point> pts = {{0, 0}, {10, 0}, {0, 10}, {10, 10}};
  auto jittered = pts;
  delbif::apply_jitter(jittered, 0.01, 5);
  bool changed = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t c = 0; c < pts[i].size(); ++c) {
      CHECK(std::abs(jittered[i][c] - pts[i][c]) <= 0.1 + 1e-12);
      if (jittered[i][c] != pts[i][c]) changed = true;
    }
  }
  CHECK(changed);
}
