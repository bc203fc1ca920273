#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "paropt/harness.hpp"

using namespace paropt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("paropt_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing: happy path and overrides") {
  const RunConfig cfg = parse_config_text(
      "# comment\n"
      "problem = example3\n"
      "gamma_s = 0.5\n"
      "m = 16\n"
      "nt = 8\n"
      "solver = inadmm\n"
      "beta0 = 2\n"
      "beta1 = 3\n"
      "theta.kind = algebraic\n"
      "theta.alpha = 3\n"
      "tol = 1e-4\n"
      "max_outer = 500\n"
      "out_dir = /tmp/paropt_cfg_demo\n"
      "snapshots = 0.25, 0.5\n"
      "seed = 7\n");
  CHECK(cfg.problem == "example3");
  CHECK(cfg.gamma_s == 0.5);
  CHECK(cfg.m == 16);
  CHECK(cfg.nt == 8);
  CHECK(cfg.params.theta.kind == ThetaSchedule::Kind::Algebraic);
  CHECK(cfg.params.max_outer == 500);
  CHECK(cfg.snapshot_times.size() == 2);
  CHECK(cfg.seed == 7);

  const ProblemSpec spec = resolve_problem(cfg);
  CHECK(spec.gamma_s == 0.5);
}

TEST_CASE("config parsing: errors before any solve") {
  CHECK_THROWS_AS(parse_config_text("problem = example9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("bogus_key = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("m = sixty\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("problem = example3\n"), ConfigError);  // gamma_s missing
  CHECK_THROWS_AS(parse_config_text("solver = newton\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("subdomain = 0,0.25,0\n"), ConfigError);
  // mesh-misaligned subdomain surfaces once the grid is built
  RunConfig cfg = parse_config_text("m = 8\nsubdomain = 0,0.3,0,0.5\nproblem = custom\n");
  const ProblemSpec spec = resolve_problem(cfg);
  CHECK_THROWS_AS(discretize(spec, cfg.m, cfg.nt), ConfigError);
}

TEST_CASE("iterations.csv round-trips every scalar bit-exactly") {
  const auto dir = temp_dir("csv");
  std::vector<IterationRecord> recs(3);
  recs[0].k = 1;
  recs[0].beta = 2.0;
  recs[0].theta = 0.123456789012345678;
  recs[0].cg_iters = 4;
  recs[0].pr = std::numeric_limits<double>::infinity();
  recs[0].dr = 1.0 / 3.0;
  recs[0].srd = 7.94e-4;
  recs[0].obj = 3.3612345678901234e-2;
  recs[0].err_u = std::numeric_limits<double>::quiet_NaN();
  recs[0].wall_ms = 12.25;
  recs[1] = recs[0];
  recs[1].k = 2;
  recs[1].pr = 5.0e-5;
  recs[1].err_u = 4.71e-3;
  recs[2] = recs[1];
  recs[2].k = 3;
  recs[2].dr = std::nextafter(1.0, 2.0);

  const std::string path = (dir / "iterations.csv").string();
  write_iterations_csv(path, recs);
  const auto back = read_iterations_csv(path);
  REQUIRE(back.size() == recs.size());
  for (size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].k == recs[i].k);
    CHECK(back[i].cg_iters == recs[i].cg_iters);
    auto same = [](double a, double b) {
      return (std::isnan(a) && std::isnan(b)) ||
             std::memcmp(&a, &b, sizeof(double)) == 0;
    };
    CHECK(same(back[i].beta, recs[i].beta));
    CHECK(same(back[i].theta, recs[i].theta));
    CHECK(same(back[i].pr, recs[i].pr));
    CHECK(same(back[i].dr, recs[i].dr));
    CHECK(same(back[i].srd, recs[i].srd));
    CHECK(same(back[i].obj, recs[i].obj));
    CHECK(same(back[i].err_u, recs[i].err_u));
    CHECK(same(back[i].wall_ms, recs[i].wall_ms));
  }
}

TEST_CASE("run writes artifacts and is deterministic modulo timing") {
  const auto dir_a = temp_dir("run_a");
  const auto dir_b = temp_dir("run_b");
  RunConfig cfg = parse_config_text(
      "problem = example1\n"
      "m = 8\n"
      "nt = 8\n"
      "solver = inadmm\n"
      "snapshots = 0.5\n");
  cfg.out_dir = dir_a.string();
  const SolveReport rep_a = run(cfg);
  cfg.out_dir = dir_b.string();
  const SolveReport rep_b = run(cfg);

  CHECK(rep_a.status == SolveStatus::Converged);
  CHECK(std::filesystem::exists(dir_a / "iterations.csv"));
  CHECK(std::filesystem::exists(dir_a / "summary.json"));
  CHECK(std::filesystem::exists(dir_a / "u_t0.5.txt"));
  CHECK(std::filesystem::exists(dir_a / "z_t0.5.txt"));
  CHECK(std::filesystem::exists(dir_a / "y_t0.5.txt"));

  const auto rows_a = read_iterations_csv((dir_a / "iterations.csv").string());
  const auto rows_b = read_iterations_csv((dir_b / "iterations.csv").string());
  REQUIRE(rows_a.size() == rows_b.size());
  for (size_t i = 0; i < rows_a.size(); ++i) {
    CHECK(rows_a[i].k == rows_b[i].k);
    CHECK(rows_a[i].beta == rows_b[i].beta);
    CHECK(rows_a[i].cg_iters == rows_b[i].cg_iters);
    auto same = [](double a, double b) {
      return (std::isnan(a) && std::isnan(b)) || a == b;
    };
    CHECK(same(rows_a[i].pr, rows_b[i].pr));
    CHECK(same(rows_a[i].dr, rows_b[i].dr));
    CHECK(same(rows_a[i].srd, rows_b[i].srd));
    CHECK(same(rows_a[i].obj, rows_b[i].obj));
    CHECK(same(rows_a[i].err_u, rows_b[i].err_u));
  }
  // snapshots are bitwise identical (no timing content)
  CHECK(slurp((dir_a / "u_t0.5.txt").string()) ==
        slurp((dir_b / "u_t0.5.txt").string()));
}

TEST_CASE("snapshot format: header plus one line per grid row") {
  const auto dir = temp_dir("snap");
  GridSpec gs;
  gs.m = 4;
  gs.nt = 4;
  const Grid g = build_grid(gs);
  Vec vals(g.ns);
  for (int i = 0; i < g.ns; ++i) vals[i] = i;
  const std::string path = (dir / "field.txt").string();
  write_snapshot(path, g, vals, "u", 2);

  std::ifstream in(path);
  std::string line;
  int header = 0, rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      ++header;
      continue;
    }
    ++rows;
    std::stringstream ss(line);
    double x;
    int count = 0;
    while (ss >> x) ++count;
    CHECK(count == g.m - 1);
  }
  CHECK(header >= 1);
  CHECK(rows == g.m - 1);
}

TEST_CASE("metrics: SRD sentinel when the target vanishes") {
  ProblemSpec spec;
  spec.gamma_d = 1.0;
  spec.bounds = BoxBounds{-1.0, 1.0};
  spec.yd = [](double, double, double) { return 0.0; };
  const Problem prob = discretize(spec, 6, 4);
  AdmmParams params;
  const SolveReport rep = run_inadmm(prob, params);
  const Metrics m = compute_metrics(prob, rep);
  CHECK(std::isnan(m.srd));
  CHECK(std::isnan(m.err_u));  // no exact solution attached
  CHECK(m.obj == doctest::Approx(0.0));
}

TEST_CASE("solver failures surface as nonzero-status reports, not crashes") {
  // PGD on example1 at a coarse mesh with an absurdly tight tolerance: the
  // run exhausts max_outer and reports MaxIter.
  RunConfig cfg = parse_config_text(
      "problem = example1\n"
      "m = 8\n"
      "nt = 8\n"
      "solver = pgd\n"
      "tol = 1e-13\n"
      "max_outer = 5\n");
  const ProblemSpec spec = resolve_problem(cfg);
  const Problem prob = discretize(spec, cfg.m, cfg.nt);
  const SolveReport rep = solve_only(prob, cfg);
  CHECK(rep.status == SolveStatus::MaxIter);
  CHECK(rep.iterations() == 5);
}
