// delbif: build the incremental Delaunay complex of a function on a point
// cloud, grade it into a two-parameter chain complex, and emit SCC2020.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "delbif/bifiltration.hpp"
#include "delbif/errors.hpp"
#include "delbif/functions.hpp"
#include "delbif/incremental_complex.hpp"
#include "delbif/oracle.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitInput = 1;
constexpr int kExitDegenerate = 2;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Config {
  std::string input = "-";
  std::string output;
  std::string function = "file";
  std::string grading = "delcech";
  std::optional<int> dimension;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  bool stats = false;
};

struct Loaded {
  std::vector<delbif::Point> positions;
  std::vector<double> gamma;
  int dimension = 0;
};

Loaded load(const Config& cfg, std::istream& in) {
  Loaded out;
  if (cfg.function == "file") {
    delbif::PointCloud cloud = delbif::parse_input(in, cfg.dimension);
    out.positions = std::move(cloud.positions);
    out.gamma = std::move(cloud.gamma);
    out.dimension = cloud.dimension;
    return out;
  }
  delbif::ParsedRows rows = delbif::parse_rows(in);
  if (!rows.rows.empty()) {
    const int cols = static_cast<int>(rows.rows.front().size());
    if (cfg.dimension && *cfg.dimension != cols)
      throw delbif::InputError(
          "input has " + std::to_string(cols) + " columns but --function " +
          cfg.function + " with dimension " + std::to_string(*cfg.dimension) +
          " expects " + std::to_string(*cfg.dimension) +
          "; the extra column implies a function value is already present");
    out.dimension = cols;
  } else {
    out.dimension = cfg.dimension.value_or(0);
  }
  out.positions = std::move(rows.rows);
  if (cfg.jitter != 0.0)  // perturb before evaluating gamma on positions
    delbif::apply_jitter(out.positions, cfg.jitter, cfg.seed);
  if (cfg.function == "codensity") {
    out.gamma = delbif::codensity(out.positions);
  } else if (cfg.function == "coeccentricity") {
    out.gamma = delbif::coeccentricity(out.positions);
  } else if (cfg.function == "height") {
    out.gamma = delbif::height(out.positions);
  } else if (cfg.function == "random") {
    out.gamma = delbif::random_gamma(out.positions.size(), cfg.seed);
  } else {
    throw delbif::InputError("unknown function '" + cfg.function + "'");
  }
  return out;
}

int run(const Config& cfg) {
  std::ifstream file;
  if (cfg.input != "-") {
    file.open(cfg.input);
    if (!file) {
      std::cerr << "delbif: cannot open '" << cfg.input << "'\n";
      return kExitInput;
    }
  }
  std::istream& in = (cfg.input == "-") ? std::cin : file;

  const auto t0 = Clock::now();
  Loaded data = load(cfg, in);
  if (cfg.function == "file" && cfg.jitter != 0.0)
    delbif::apply_jitter(data.positions, cfg.jitter, cfg.seed);
  delbif::OrderedInput ordered =
      delbif::order_by_gamma(data.positions, data.gamma);
  delbif::IncrementalComplex complex =
      delbif::IncrementalComplex::build(ordered.points, ordered.gamma);
  const double t_construct = seconds_since(t0);

  const auto t1 = Clock::now();
  delbif::GradedComplex graded = (cfg.grading == "del")
                                     ? delbif::grade_del(complex)
                                     : delbif::grade_delcech(complex);
  const double t_grade = seconds_since(t1);

  const auto t2 = Clock::now();
  std::vector<std::string> metadata = {
      std::string("delbif ") + kVersion,
      "grading: " + cfg.grading + ", function: " + cfg.function,
      "seed: " + std::to_string(cfg.seed) +
          ", jitter: " + delbif::format_double(cfg.jitter),
  };
  if (cfg.output.empty() || cfg.output == "-") {
    delbif::write_scc2020(graded, std::cout, metadata);
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "delbif: cannot write '" << cfg.output << "'\n";
      return kExitInput;
    }
    delbif::write_scc2020(graded, out, metadata);
  }
  const double t_write = seconds_since(t2);

  if (cfg.stats) {
    delbif::IncrementalComplex::Stats stats = complex.stats();
    std::ostringstream line;
    for (std::size_t k = 0; k < stats.per_dimension.size(); ++k)
      line << (k ? " " : "") << stats.per_dimension[k];
    std::cerr << "cells per dimension: " << line.str() << "\n"
              << "total cells:         " << stats.total << "\n"
              << "delaunay size:       " << stats.delaunay_size << "\n"
              << "size ratio:          " << stats.ratio << "\n"
              << "time construction:   " << t_construct << " s\n"
              << "time meb/grading:    " << t_grade << " s\n"
              << "time serialization:  " << t_write << " s\n";
  }
  return 0;
}

int generate(const std::string& shape, std::size_t n, std::uint64_t seed,
             const std::string& output) {
  std::vector<delbif::Point> pts = delbif::generate_shape(shape, n, seed);
  std::ostringstream body;
  body << "# delbif generate, shape: " << shape << ", n: " << n
       << ", seed: " << seed << "\n";
  for (const delbif::Point& p : pts) {
    for (std::size_t j = 0; j < p.size(); ++j)
      body << (j ? " " : "") << delbif::format_double(p[j]);
    body << "\n";
  }
  if (output.empty() || output == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) {
      std::cerr << "delbif: cannot write '" << output << "'\n";
      return kExitInput;
    }
    out << body.str();
  }
  return 0;
}

int verify(const Config& cfg) {
  std::ifstream file;
  if (cfg.input != "-") {
    file.open(cfg.input);
    if (!file) {
      std::cerr << "delbif: cannot open '" << cfg.input << "'\n";
      return kExitInput;
    }
  }
  std::istream& in = (cfg.input == "-") ? std::cin : file;
  Loaded data = load(cfg, in);
  if (data.positions.size() > 12) {
    std::cerr << "delbif verify: brute-force oracles need n <= 12 (got "
              << data.positions.size() << ")\n";
    return kExitInput;
  }
  delbif::OrderedInput ordered =
      delbif::order_by_gamma(data.positions, data.gamma);
  delbif::IncrementalComplex complex =
      delbif::IncrementalComplex::build(ordered.points, ordered.gamma);
  std::vector<delbif::Simplex> built;
  for (int k = 0; k <= complex.top_dimension(); ++k)
    for (const delbif::Simplex& s : complex.simplices(k)) built.push_back(s);
  std::sort(built.begin(), built.end());
  const auto expected = delbif::oracle::oracle_incremental(ordered.points);
  bool ok = built == expected;
  if (!ok) std::cerr << "verify: complex differs from the oracle\n";

  const auto report =
      delbif::oracle::equivalence_suite(data.positions, data.gamma);
  for (const std::string& m : report.mismatches)
    std::cerr << "verify: " << m << "\n";
  ok = ok && report.ok;
  std::cout << (ok ? "ok" : "FAILED") << " (" << report.grades_checked
            << " bigrades checked)\n";
  return ok ? 0 : kExitInput;
}

int bench(const std::string& shape, std::size_t n, const std::string& function,
          std::uint64_t seed) {
  std::vector<delbif::Point> pts = delbif::generate_shape(shape, n, seed);
  std::vector<double> gamma;
  if (function == "codensity") {
    gamma = delbif::codensity(pts);
  } else if (function == "coeccentricity") {
    gamma = delbif::coeccentricity(pts);
  } else if (function == "height") {
    gamma = delbif::height(pts);
  } else if (function == "random") {
    gamma = delbif::random_gamma(pts.size(), seed);
  } else {
    throw delbif::InputError("unknown function '" + function + "'");
  }
  delbif::OrderedInput ordered = delbif::order_by_gamma(pts, gamma);
  const auto t0 = Clock::now();
  delbif::IncrementalComplex complex =
      delbif::IncrementalComplex::build(ordered.points, ordered.gamma);
  const double elapsed = seconds_since(t0);
  delbif::IncrementalComplex::Stats stats = complex.stats();
  std::cout << "shape=" << shape << " function=" << function << " n=" << n
            << " delaunay=" << stats.delaunay_size
            << " incremental=" << stats.total << " ratio=" << stats.ratio
            << " time=" << elapsed << "s per_simplex="
            << (stats.total ? elapsed / static_cast<double>(stats.total) : 0.0)
            << "s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental Delaunay bifiltrations in SCC2020 format"};
  app.require_subcommand(0, 1);

  Config cfg;
  app.add_option("input", cfg.input, "input file, or - for standard input");
  app.add_option("-o,--output", cfg.output, "output file (default: stdout)");
  app.add_option("--function", cfg.function,
                 "gamma source: file, codensity, coeccentricity, height, "
                 "random")
      ->check(CLI::IsMember(
          {"file", "codensity", "coeccentricity", "height", "random"}));
  app.add_option("--grading", cfg.grading, "radius grade: delcech or del")
      ->check(CLI::IsMember({"delcech", "del"}));
  app.add_option("-d,--dimension", cfg.dimension, "expected point dimension");
  app.add_option("--jitter", cfg.jitter,
                 "relative uniform perturbation amplitude");
  app.add_option("--seed", cfg.seed, "seed for --jitter and --function random");
  app.add_flag("--stats", cfg.stats, "print size and phase-timing statistics");

  auto* gen = app.add_subcommand("generate", "emit a benchmark point cloud");
  std::string gen_shape = "square";
  std::size_t gen_n = 1000;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--shape", gen_shape, "circle, sphere, torus, square, cube")
      ->check(CLI::IsMember({"circle", "sphere", "torus", "square", "cube"}));
  gen->add_option("-n,--count", gen_n, "number of points");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_out, "output file (default: stdout)");

  auto* ver = app.add_subcommand(
      "verify", "check a small input against the brute-force oracles");
  ver->fallthrough();

  auto* ben = app.add_subcommand("bench", "size/time table row");
  std::string ben_shape = "square";
  std::size_t ben_n = 1000;
  std::string ben_function = "random";
  std::uint64_t ben_seed = 0;
  ben->add_option("--shape", ben_shape, "circle, sphere, torus, square, cube")
      ->check(CLI::IsMember({"circle", "sphere", "torus", "square", "cube"}));
  ben->add_option("-n,--count", ben_n, "number of points");
  ben->add_option("--function", ben_function,
                  "codensity, coeccentricity, height, random")
      ->check(CLI::IsMember(
          {"codensity", "coeccentricity", "height", "random"}));
  ben->add_option("--seed", ben_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return generate(gen_shape, gen_n, gen_seed, gen_out);
    if (ben->parsed()) return bench(ben_shape, ben_n, ben_function, ben_seed);
    if (ver->parsed()) return verify(cfg);
    return run(cfg);
  } catch (const delbif::DegeneracyError& e) {
    std::cerr << "delbif: " << e.what()
              << "\nhint: rerun with --jitter 1e-9 (and a --seed) to break "
                 "the degeneracy\n";
    return kExitDegenerate;
  } catch (const delbif::InputError& e) {
    std::cerr << "delbif: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "delbif: " << e.what() << "\n";
    return kExitInput;
  }
}
