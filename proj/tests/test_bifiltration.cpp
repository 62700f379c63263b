#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "delbif/bifiltration.hpp"
#include "delbif/errors.hpp"
#include "delbif/incremental_complex.hpp"
#include "delbif/oracle.hpp"
#include "delbif/predicates.hpp"
#include "support.hpp"

using delbif::Bigrade;
using delbif::GradedCell;
using delbif::GradedComplex;
using delbif::IncrementalComplex;
using delbif::Point;
using delbif::Simplex;

namespace {

// Three collinear 1-d points inserted in the order 0, 2, 1 with
// function values 1, 2, 3 in insertion order.
IncrementalComplex worked_example() {
  return IncrementalComplex::build({{0}, {2}, {1}}, {1, 2, 3});
}

const GradedCell* find_cell(const GradedComplex& g, const Simplex& verts) {
  for (const auto& block : g.cells)
    for (const auto& cell : block)
      if (cell.verts == verts) return &cell;
  return nullptr;
}

std::vector<Point> random_instance(std::mt19937_64& rng, std::size_t n,
                                   std::size_t d, int span) {
  std::vector<Point> pts;
  while (pts.size() < n) {
    Point p(d);
    for (double& c : p)
      c = static_cast<double>(static_cast<int>(rng() % (2 * span + 1))) - span;
    if (std::find(pts.begin(), pts.end(), p) == pts.end())
      pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

TEST_CASE("delcech grades on the collinear example") {
  auto g = grade_delcech(worked_example());
  REQUIRE(g.cells.size() == 3);
  const GradedCell* tri = find_cell(g, {0, 1, 2});
  REQUIRE(tri != nullptr);
  CHECK(tri->grade.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tri->grade.s == doctest::Approx(3.0));
  const GradedCell* edge = find_cell(g, {0, 1});  // ranks of inputs 0 and 2
  REQUIRE(edge != nullptr);
  CHECK(edge->grade.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(edge->grade.s == doctest::Approx(2.0));
  const GradedCell* v0 = find_cell(g, {0});
  REQUIRE(v0 != nullptr);
  CHECK(v0->grade.r == 0.0);
  CHECK(v0->grade.s == doctest::Approx(1.0));
}

TEST_CASE("del grades on the collinear example") {
  auto g = grade_del(worked_example());
  const GradedCell* edge01 = find_cell(g, {0, 2});  // inputs 0 and 1
  REQUIRE(edge01 != nullptr);
  CHECK(edge01->grade.r == doctest::Approx(0.5).epsilon(1e-12));
  const GradedCell* tri = find_cell(g, {0, 1, 2});
  REQUIRE(tri != nullptr);
  CHECK(tri->grade.r == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& cell : g.cells[0]) CHECK(cell.grade.r == 0.0);
}

TEST_CASE("vertices grade at radius zero with their own function value") {
  auto g = grade_delcech(worked_example());
  std::vector<double> svals;
  for (const auto& cell : g.cells[0]) {
    CHECK(cell.grade.r == 0.0);
    svals.push_back(cell.grade.s);
  }
  std::sort(svals.begin(), svals.end());
  CHECK(svals == std::vector<double>{1, 2, 3});
}

TEST_CASE("del dominates delcech and both validate on random instances") {
  std::mt19937_64 rng(60601);
  int done = 0;
  while (done < 12) {
    const std::size_t d = 1 + rng() % 2;
    auto pts = random_instance(rng, 5 + rng() % 5, d, 10);
    std::vector<double> gamma;
    for (const Point& p : pts) gamma.push_back(p[0]);
    IncrementalComplex ic;
    try {
      ic = IncrementalComplex::build(pts, gamma);
    } catch (const delbif::DegeneracyError&) {
      continue;
    }
    auto cech = grade_delcech(ic);
    auto del = grade_del(ic);
    CHECK(delbif::validate(cech).empty());
    CHECK(delbif::validate(del).empty());
    REQUIRE(cech.cells.size() == del.cells.size());
    for (std::size_t k = 0; k < cech.cells.size(); ++k) {
      for (const auto& dc : del.cells[k]) {
        const GradedCell* cc = find_cell(cech, dc.verts);
        REQUIRE(cc != nullptr);
        CHECK(dc.grade.r >= cc->grade.r - 1e-9 * (1.0 + cc->grade.r));
        CHECK(dc.grade.s == cc->grade.s);
      }
    }
    ++done;
  }
}

TEST_CASE("delcech radii match the exact meb oracle") {
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 8) {
    auto pts = random_instance(rng, 7, 2, 10);
    IncrementalComplex ic;
    try {
      ic = IncrementalComplex::build(pts, std::vector<double>(pts.size(), 0));
    } catch (const delbif::DegeneracyError&) {
      continue;
    }
    auto g = grade_delcech(ic);
    for (const auto& block : g.cells) {
      for (const auto& cell : block) {
        std::vector<Point> sub;
        for (int v : cell.verts) sub.push_back(ic.points()[v]);
        const double exact =
            std::sqrt(delbif::oracle::oracle_meb(sub).radius_sq.get_d());
        CHECK(cell.grade.r == doctest::Approx(exact).epsilon(1e-9));
      }
    }
    ++done;
  }
}

TEST_CASE("sublevel restrictions are face-closed") {
  std::mt19937_64 rng(515);
  GradedComplex g;
  for (;;) {
    auto pts = random_instance(rng, 8, 2, 10);
    std::vector<double> gamma;
    for (const Point& p : pts) gamma.push_back(p[1]);
    try {
      g = grade_delcech(IncrementalComplex::build(pts, gamma));
      break;
    } catch (const delbif::DegeneracyError&) {
    }
  }
  std::vector<Bigrade> grid;
  for (const auto& block : g.cells)
    for (const auto& cell : block) grid.push_back(cell.grade);
  for (const Bigrade& rs : grid) {
    std::vector<Simplex> sub;
    for (const auto& block : g.cells)
      for (const auto& cell : block)
        if (cell.grade.r <= rs.r && cell.grade.s <= rs.s)
          sub.push_back(cell.verts);
    std::sort(sub.begin(), sub.end());
    for (const Simplex& s : sub) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) face.push_back(s[j]);
        if (!face.empty())
          CHECK(std::binary_search(sub.begin(), sub.end(), face));
      }
    }
  }
}

TEST_CASE("validate flags hand-built violations") {
  GradedComplex g;
  g.cells.resize(2);
  g.cells[0].push_back({{0.0, 5.0}, {}, {0}});
  g.cells[0].push_back({{0.0, 1.0}, {}, {1}});
  g.cells[1].push_back({{1.0, 1.0}, {0, 1}, {0, 1}});  // edge below vertex 0 in s
  auto violations = delbif::validate(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == delbif::Violation::MONOTONICITY);

  GradedComplex h;
  h.cells.resize(3);
  h.cells[0] = {{{0, 0}, {}, {0}}, {{0, 0}, {}, {1}}, {{0, 0}, {}, {2}}};
  h.cells[1] = {{{1, 0}, {0, 1}, {0, 1}},
                {{1, 0}, {0, 2}, {0, 2}},
                {{1, 0}, {1, 2}, {1, 2}}};
  h.cells[2].push_back({{2, 0}, {0, 1}, {0, 1, 2}});  // only 2 facets listed
  auto card = delbif::validate(h);
  REQUIRE(card.size() == 1);
  CHECK(card[0].kind == delbif::Violation::BOUNDARY_CARDINALITY);
}

TEST_CASE("scc2020 literal output") {
  GradedComplex g;
  g.cells.resize(2);
  g.cells[0].push_back({{0.0, 1.0}, {}, {0}});
  g.cells[0].push_back({{0.0, 2.0}, {}, {1}});
  g.cells[1].push_back({{0.5, 2.0}, {0, 1}, {0, 1}});
  std::ostringstream out;
  delbif::write_scc2020(g, out);
  CHECK(out.str() ==
        "scc2020\n"
        "2\n"
        "1 2 0\n"
        "0.5 2 ; 0 1\n"
        "0 1 ;\n"
        "0 2 ;\n");
}

TEST_CASE("scc2020 empty complex") {
  std::ostringstream out;
  delbif::write_scc2020(GradedComplex{}, out);
  CHECK(out.str() == "scc2020\n2\n0\n");
}

TEST_CASE("scc2020 worked example block sizes") {
  std::ostringstream out;
  delbif::write_scc2020(grade_delcech(worked_example()), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);  // parameter count
  std::getline(in, line);
  CHECK(line == "1 3 3 0");
}

TEST_CASE("scc2020 round trip is byte-identical") {
  std::mt19937_64 rng(121);
  int done = 0;
  while (done < 6) {
    auto pts = random_instance(rng, 6 + rng() % 4, 2, 10);
    std::vector<double> gamma;
    for (const Point& p : pts) gamma.push_back(p[0] + p[1]);
    IncrementalComplex ic;
    try {
      ic = IncrementalComplex::build(pts, gamma);
    } catch (const delbif::DegeneracyError&) {
      continue;
    }
    auto g = grade_delcech(ic);
    std::ostringstream first;
    delbif::write_scc2020(g, first);
    std::istringstream in(first.str());
    auto parsed = delbif::read_scc2020(in);
    CHECK(parsed == g);
    std::ostringstream second;
    delbif::write_scc2020(parsed, second);
    CHECK(second.str() == first.str());
    ++done;
  }
}

TEST_CASE("scc2020 reader skips comments and tolerates crlf") {
  std::istringstream in(
      "scc2020\r\n# produced by a test\n\n2\n1 2 0\n0.5 2 ; 0 1\n0 1 ;\n"
      "0 2 ;\n");
  auto g = delbif::read_scc2020(in);
  REQUIRE(g.cells.size() == 2);
  CHECK(g.cells[0].size() == 2);
  CHECK(g.cells[1].size() == 1);
  CHECK(g.cells[1][0].boundary == std::vector<int>{0, 1});
}

TEST_CASE("scc2020 parse errors carry line numbers") {
  auto expect_error = [](const std::string& text, const std::string& frag) {
    std::istringstream in(text);
    try {
      delbif::read_scc2020(in);
      FAIL("expected InputError for: ", text);
    } catch (const delbif::InputError& e) {
      CHECK(std::string(e.what()).find(frag) != std::string::npos);
    }
  };
  expect_error("nonsense\n2\n0\n", "line 1");
  expect_error("scc2020\n2\n1 2 0\n0.5 2 ; 0 5\n0 1 ;\n0 2 ;\n", "line 4");
  expect_error("scc2020\n2\n1 2 0\nzap 2 ; 0 1\n0 1 ;\n0 2 ;\n", "line 4");
  expect_error("scc2020\n3\n0\n", "line 2");
}

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(delbif::format_double(0.5) == "0.5");
  CHECK(delbif::format_double(2.0) == "2");
  CHECK(delbif::format_double(0.1) == "0.1");
  const double v = 1.0 / 3.0;
  CHECK(std::stod(delbif::format_double(v)) == v);
}
