#include "paropt/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace paropt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::StepFailure: return "step_failure";
  }
  return "unknown";
}

}  // namespace

Metrics compute_metrics(const Problem& prob, const SolveReport& report) {
  Metrics m;
  const Discretization& disc = *prob.disc;
  const StateTrajectory y = prob.solve_state(report.z);
  const SpaceTimeField r = y.rightCols(disc.nt()) - prob.yd;
  const double track = disc.dot_Y(r, r);
  const double yd_norm = disc.norm_Y(prob.yd);
  m.srd = (yd_norm == 0.0) ? kNaN : std::sqrt(std::max(0.0, track)) / yd_norm;
  m.obj = 0.5 * prob.gamma_d * track + 0.5 * disc.dot_U(report.z, report.z) +
          prob.gamma_s * disc.norm_L1_U(report.z);
  if (prob.u_star) m.err_u = disc.norm_U(report.u - *prob.u_star);
  return m;
}

SolveReport solve_only(const Problem& prob, const RunConfig& cfg) {
  if (cfg.solver == "inadmm") return run_inadmm(prob, cfg.params);
  if (cfg.solver == "admmcg") return run_admm_exact(prob, cfg.params);
  if (cfg.solver == "pgd") return run_pgd(prob, cfg.params);
  throw ConfigError("unknown solver '" + cfg.solver + "'");
}

void write_iterations_csv(const std::string& path,
                          const std::vector<IterationRecord>& records) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "k,beta,theta,cg_iters,PR,DR,SRD,Obj,err_u,wall_ms\n";
  for (const auto& r : records) {
    out << r.k << ',' << fmt(r.beta) << ',' << fmt(r.theta) << ',' << r.cg_iters
        << ',' << fmt(r.pr) << ',' << fmt(r.dr) << ',' << fmt(r.srd) << ','
        << fmt(r.obj) << ',' << fmt(r.err_u) << ',' << fmt(r.wall_ms) << '\n';
  }
}

std::vector<IterationRecord> read_iterations_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw DataError("empty iterations file '" + path + "'");
  std::vector<IterationRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 10)
      throw DataError("malformed row in '" + path + "': " + line);
    IterationRecord r;
    r.k = std::stoi(cells[0]);
    r.beta = std::strtod(cells[1].c_str(), nullptr);
    r.theta = std::strtod(cells[2].c_str(), nullptr);
    r.cg_iters = std::stoi(cells[3]);
    r.pr = std::strtod(cells[4].c_str(), nullptr);
    r.dr = std::strtod(cells[5].c_str(), nullptr);
    r.srd = std::strtod(cells[6].c_str(), nullptr);
    r.obj = std::strtod(cells[7].c_str(), nullptr);
    r.err_u = std::strtod(cells[8].c_str(), nullptr);
    r.wall_ms = std::strtod(cells[9].c_str(), nullptr);
    records.push_back(r);
  }
  return records;
}

void write_snapshot(const std::string& path, const Grid& grid, const Vec& values,
                    const std::string& field, int level) {
  if (values.size() != grid.ns)
    throw DimensionError("write_snapshot: field does not match the grid");
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << "# field=" << field << " m=" << grid.m << " nt=" << grid.nt
      << " level=" << level << " t=" << fmt(level * grid.tau) << '\n';
  out << "# interior nodes, row-major: x = h..1-h left to right, y = h..1-h "
         "top line first\n";
  for (int j = grid.m - 1; j >= 1; --j) {
    for (int i = 1; i <= grid.m - 1; ++i) {
      const int dof = grid.dof_of_vertex[grid.vertex_id(i, j)];
      out << fmt(values[dof]);
      out << (i == grid.m - 1 ? '\n' : ' ');
    }
  }
}

namespace {

int snapshot_level(const Grid& grid, double t, bool state_field) {
  if (t < 0.0 || t > grid.T * (1.0 + 1e-12))
    throw ConfigError("snapshot time " + std::to_string(t) + " outside [0,T]");
  const int level = static_cast<int>(std::lround(t / grid.tau));
  if (!state_field && level < 1)
    throw ConfigError("control snapshots need t >= tau (no level-0 control)");
  return std::min(level, grid.nt);
}

void write_all_snapshots(const RunConfig& cfg, const Problem& prob,
                         const SolveReport& report) {
  if (cfg.snapshot_times.empty()) return;
  const Grid& g = prob.disc->grid();
  const StateTrajectory y = prob.solve_state(report.z);
  for (double t : cfg.snapshot_times) {
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "_t%g.txt", t);
    const int lvl_u = snapshot_level(g, t, false);
    const int lvl_y = snapshot_level(g, t, true);
    write_snapshot(cfg.out_dir + "/u" + suffix, g,
                   extend_by_zero(g, report.u.col(lvl_u - 1)), "u", lvl_u);
    write_snapshot(cfg.out_dir + "/z" + suffix, g,
                   extend_by_zero(g, report.z.col(lvl_u - 1)), "z", lvl_u);
    write_snapshot(cfg.out_dir + "/y" + suffix, g, y.col(lvl_y), "y", lvl_y);
  }
}

void write_summary(const RunConfig& cfg, const Problem& prob,
                   const SolveReport& report, const Metrics& metrics) {
  nlohmann::json j;
  j["config"] = {{"problem", cfg.problem}, {"m", cfg.m},
                 {"nt", cfg.nt},           {"solver", cfg.solver},
                 {"gamma_s", cfg.gamma_s}, {"tol", cfg.params.tol},
                 {"beta0", cfg.params.beta0}, {"beta1", cfg.params.beta1},
                 {"max_outer", cfg.params.max_outer}, {"seed", cfg.seed}};
  j["status"] = status_name(report.status);
  j["iterations"] = report.iterations();
  j["cg_ave"] = report.cg_ave;
  j["cg_max"] = report.cg_max;
  j["theta0"] = report.theta0_used;
  j["wall_s"] = report.wall_s;
  auto num_or_null = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json();
  };
  j["obj"] = num_or_null(metrics.obj);
  j["srd"] = num_or_null(metrics.srd);
  j["err_u"] = num_or_null(metrics.err_u);
  if (!report.records.empty()) {
    j["final_pr"] = num_or_null(report.last().pr);
    j["final_dr"] = num_or_null(report.last().dr);
  }
  j["problem_name"] = prob.name;
  std::ofstream out(cfg.out_dir + "/summary.json");
  if (!out) throw DataError("cannot write '" + cfg.out_dir + "/summary.json'");
  out << j.dump(2) << '\n';
}

}  // namespace

SolveReport run(const RunConfig& cfg) {
  cfg.validate();
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec)
    throw ConfigError("cannot create out_dir '" + cfg.out_dir + "': " + ec.message());

  const ProblemSpec spec = resolve_problem(cfg);
  const Problem prob = discretize(spec, cfg.m, cfg.nt);
  const SolveReport report = solve_only(prob, cfg);
  const Metrics metrics = compute_metrics(prob, report);

  write_iterations_csv(cfg.out_dir + "/iterations.csv", report.records);
  write_summary(cfg, prob, report, metrics);
  write_all_snapshots(cfg, prob, report);
  return report;
}

// ---------------------------------------------------------------------------
// Benchmark tables
// ---------------------------------------------------------------------------

namespace {

struct Bands {
  double it_lo = kNaN, it_hi = kNaN;
  double err_lo = kNaN, err_hi = kNaN;
  double obj_ref = kNaN, obj_rtol = kNaN;
  double srd_ref = kNaN, srd_rtol = kNaN;
  double cg_lo = kNaN, cg_hi = kNaN;
};

struct RowSpec {
  std::string problem;
  std::string method;  // inadmm | admmcg | pgd
  ThetaSchedule theta;
  std::string theta_label;
  int m = 64;
  double gamma_s = 0.0;
  double beta0 = 2.0, beta1 = 3.0;
  double ref_iters = kNaN, ref_err = kNaN, ref_obj = kNaN, ref_srd = kNaN,
         ref_cg_ave = kNaN;
  Bands bands;
  bool has_bands = false;
  bool expect_nonconvergence = false;
};

std::string row_slug(const RowSpec& s) {
  std::ostringstream os;
  os << s.method;
  if (!s.theta_label.empty()) {
    std::string t = s.theta_label;
    for (auto& c : t)
      if (c == '/' || c == '^' || c == '(' || c == ')' || c == '.') c = '_';
    os << "_" << t;
  }
  os << "_m" << s.m;
  if (s.gamma_s > 0.0) os << "_gs" << s.gamma_s;
  return os.str();
}

std::string check_bands(const RowSpec& spec, const TableRow& row) {
  if (spec.expect_nonconvergence) {
    return row.status == SolveStatus::Converged
               ? "FAIL (converged where non-convergence expected)"
               : "pass (non-convergence expected)";
  }
  if (!spec.has_bands) return "info";
  std::vector<std::string> fails;
  const Bands& b = spec.bands;
  if (row.status != SolveStatus::Converged) fails.push_back("not converged");
  if (std::isfinite(b.it_lo) &&
      (row.iterations < b.it_lo || row.iterations > b.it_hi))
    fails.push_back("iterations");
  if (std::isfinite(b.err_lo) && (row.err_u < b.err_lo || row.err_u > b.err_hi))
    fails.push_back("err_u");
  if (std::isfinite(b.obj_ref) &&
      std::abs(row.obj - b.obj_ref) > b.obj_rtol * std::abs(b.obj_ref))
    fails.push_back("obj");
  if (std::isfinite(b.srd_ref) &&
      std::abs(row.srd - b.srd_ref) > b.srd_rtol * std::abs(b.srd_ref))
    fails.push_back("srd");
  if (std::isfinite(b.cg_lo) && (row.cg_ave < b.cg_lo || row.cg_ave > b.cg_hi))
    fails.push_back("cg_ave");
  if (fails.empty()) return "pass";
  std::string out = "FAIL (";
  for (size_t i = 0; i < fails.size(); ++i)
    out += fails[i] + (i + 1 < fails.size() ? ", " : ")");
  return out;
}

const ThetaSchedule kCube = ThetaSchedule::algebraic(3.0);
const ThetaSchedule kHalf = ThetaSchedule::geometric(0.5);

std::vector<RowSpec> table1_rows() {
  std::vector<RowSpec> rows;
  auto base = [](const ThetaSchedule& th, const std::string& lbl, int m) {
    RowSpec s;
    s.problem = "example1";
    s.method = "inadmm";
    s.theta = th;
    s.theta_label = lbl;
    s.m = m;
    s.beta0 = 2.0;
    s.beta1 = 3.0;
    return s;
  };

  {  // mesh-refinement anchor for the error-ratio check
    RowSpec s = base(kHalf, "theta0/2^k", 32);
    rows.push_back(s);
  }
  {
    RowSpec s = base(kCube, "theta0/k^3", 64);
    s.ref_iters = 19; s.ref_err = 4.71e-3; s.ref_obj = 3.36e-2;
    s.ref_srd = 7.94e-4; s.ref_cg_ave = 5.68;
    s.bands = {16, 22, 4.2e-3, 5.3e-3, 3.36e-2, 0.02, 7.94e-4, 0.10, 0.0, 8.0};
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base(kHalf, "theta0/2^k", 64);
    s.ref_iters = 20; s.ref_err = 4.71e-3; s.ref_obj = 3.36e-2;
    s.ref_srd = 7.94e-4; s.ref_cg_ave = 8.55;
    s.bands = {17, 23, 4.2e-3, 5.3e-3, 3.36e-2, 0.02, 7.94e-4, 0.10, 0.0, 12.0};
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base({}, "", 64);
    s.method = "admmcg";
    s.ref_iters = 15; s.ref_err = 4.69e-3; s.ref_obj = 3.36e-2;
    s.ref_srd = 7.94e-4; s.ref_cg_ave = 31.13;
    s.bands.it_lo = 12; s.bands.it_hi = 18;
    s.bands.err_lo = 4.2e-3; s.bands.err_hi = 5.3e-3;
    s.bands.cg_lo = 20; s.bands.cg_hi = 45;
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base({}, "", 64);
    s.method = "pgd";
    s.ref_iters = 288; s.ref_err = 5.77e-3; s.ref_obj = 3.36e-2; s.ref_srd = 7.95e-4;
    s.bands.it_lo = 200; s.bands.it_hi = 400;
    s.bands.err_lo = 5.0e-3; s.bands.err_hi = 7.0e-3;
    s.has_bands = true;
    rows.push_back(s);
  }

  {
    RowSpec s = base(kCube, "theta0/k^3", 128);
    s.ref_iters = 19; s.ref_err = 1.19e-3; s.ref_obj = 3.40e-2;
    s.ref_srd = 8.01e-4; s.ref_cg_ave = 5.79;
    rows.push_back(s);
    s = base(kHalf, "theta0/2^k", 128);
    s.ref_iters = 20; s.ref_err = 1.20e-3; s.ref_obj = 3.40e-2;
    s.ref_srd = 8.02e-4; s.ref_cg_ave = 8.65;
    rows.push_back(s);
    s = base({}, "", 128);
    s.method = "admmcg";
    s.ref_iters = 15; s.ref_err = 1.18e-3; s.ref_obj = 3.40e-2;
    s.ref_srd = 8.02e-4; s.ref_cg_ave = 29.13;
    rows.push_back(s);
    s = base({}, "", 128);
    s.method = "pgd";
    s.ref_iters = 700; s.ref_err = 1.24e-3; s.ref_obj = 3.40e-2; s.ref_srd = 8.02e-4;
    rows.push_back(s);
  }
  {
    RowSpec s = base(kCube, "theta0/k^3", 256);
    s.ref_iters = 20; s.ref_err = 2.99e-4; s.ref_obj = 3.41e-2;
    s.ref_srd = 8.04e-4; s.ref_cg_ave = 5.10;
    rows.push_back(s);
    s = base(kHalf, "theta0/2^k", 256);
    s.ref_iters = 21; s.ref_err = 2.96e-4; s.ref_obj = 3.41e-2;
    s.ref_srd = 8.04e-4; s.ref_cg_ave = 9.14;
    rows.push_back(s);
    s = base({}, "", 256);
    s.method = "admmcg";
    s.ref_iters = 15; s.ref_err = 2.88e-4; s.ref_obj = 3.41e-2;
    s.ref_srd = 8.03e-4; s.ref_cg_ave = 27.87;
    rows.push_back(s);
    s = base({}, "", 256);
    s.method = "pgd";
    s.expect_nonconvergence = true;
    rows.push_back(s);
  }
  return rows;
}

std::vector<RowSpec> table2_rows() {
  std::vector<RowSpec> rows;
  const ThetaSchedule k14 = ThetaSchedule::geometric(1.0 / 1.4);
  auto base = [](const std::string& method, const ThetaSchedule& th,
                 const std::string& lbl, int m) {
    RowSpec s;
    s.problem = "example2";
    s.method = method;
    s.theta = th;
    s.theta_label = lbl;
    s.m = m;
    s.beta0 = 8.0;
    s.beta1 = 8.0;
    return s;
  };

  {
    RowSpec s = base("inadmm", kCube, "theta0/k^3", 64);
    s.ref_iters = 34; s.ref_obj = 1.19e3; s.ref_srd = 0.816; s.ref_cg_ave = 4.56;
    s.bands.obj_ref = 1.19e3; s.bands.obj_rtol = 0.02;
    s.bands.srd_ref = 0.816; s.bands.srd_rtol = 0.02;
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base("inadmm", k14, "theta0/1.4^k", 64);
    s.ref_iters = 38; s.ref_obj = 1.19e3; s.ref_srd = 0.816; s.ref_cg_ave = 2.68;
    s.bands = {33, 44, kNaN, kNaN, 1.19e3, 0.02, 0.816, 0.02, 0.0, 4.0};
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base("admmcg", {}, "", 64);
    s.ref_iters = 35; s.ref_obj = 1.19e3; s.ref_srd = 0.816; s.ref_cg_ave = 31.46;
    s.bands.obj_ref = 1.19e3; s.bands.obj_rtol = 0.02;
    s.bands.srd_ref = 0.816; s.bands.srd_rtol = 0.02;
    s.has_bands = true;
    rows.push_back(s);
  }
  {
    RowSpec s = base("pgd", {}, "", 64);
    s.ref_iters = 405; s.ref_obj = 1.19e3; s.ref_srd = 0.818;
    s.bands.obj_ref = 1.19e3; s.bands.obj_rtol = 0.02;
    s.bands.srd_ref = 0.816; s.bands.srd_rtol = 0.02;
    s.has_bands = true;
    rows.push_back(s);
  }

  {
    RowSpec s = base("inadmm", kCube, "theta0/k^3", 128);
    s.ref_iters = 34; s.ref_obj = 1.21e3; s.ref_srd = 0.822; s.ref_cg_ave = 3.94;
    rows.push_back(s);
    s = base("inadmm", k14, "theta0/1.4^k", 128);
    s.ref_iters = 39; s.ref_obj = 1.21e3; s.ref_srd = 0.822; s.ref_cg_ave = 2.69;
    rows.push_back(s);
    s = base("admmcg", {}, "", 128);
    s.ref_iters = 35; s.ref_obj = 1.21e3; s.ref_srd = 0.822; s.ref_cg_ave = 22.63;
    rows.push_back(s);
    s = base("pgd", {}, "", 128);
    s.ref_iters = 488; s.ref_obj = 1.21e3; s.ref_srd = 0.824;
    rows.push_back(s);
  }
  {
    RowSpec s = base("inadmm", kCube, "theta0/k^3", 256);
    s.ref_iters = 35; s.ref_obj = 1.22e3; s.ref_srd = 0.825; s.ref_cg_ave = 3.66;
    rows.push_back(s);
    s = base("inadmm", k14, "theta0/1.4^k", 256);
    s.ref_iters = 39; s.ref_obj = 1.22e3; s.ref_srd = 0.825; s.ref_cg_ave = 2.64;
    rows.push_back(s);
    s = base("admmcg", {}, "", 256);
    s.ref_iters = 35; s.ref_obj = 1.22e3; s.ref_srd = 0.825; s.ref_cg_ave = 21.03;
    rows.push_back(s);
    s = base("pgd", {}, "", 256);
    s.expect_nonconvergence = true;
    rows.push_back(s);
  }
  return rows;
}

std::vector<RowSpec> table3_rows() {
  std::vector<RowSpec> rows;
  struct Case { double gs, b0, b1, it_cube, cg_cube, it_half, cg_half,
                it_cg, cg_cg, obj, srd; };
  const Case cases[] = {
      {0.1, 2, 3, 18, 5.50, 21, 9.29, 20, 26.00, 3.43e-2, 1.02e-3},
      {0.5, 2, 3, 25, 5.72, 23, 10.83, 22, 28.23, 4.22e-2, 1.88e-3},
      {5, 10, 10, 65, 5.89, 66, 11.02, 61, 16.36, 2.59e-1, 7.74e-3},
      {10, 10, 10, 111, 5.53, 111, 8.45, 108, 14.84, 5.06e-1, 1.10e-2},
  };
  for (const auto& c : cases) {
    RowSpec s;
    s.problem = "example3";
    s.m = 64;
    s.gamma_s = c.gs;
    s.beta0 = c.b0;
    s.beta1 = c.b1;

    s.method = "inadmm";
    s.theta = kCube;
    s.theta_label = "theta0/k^3";
    s.ref_iters = c.it_cube; s.ref_cg_ave = c.cg_cube;
    s.ref_obj = c.obj; s.ref_srd = c.srd;
    if (c.gs == 0.1) {
      s.bands.obj_ref = 3.43e-2; s.bands.obj_rtol = 0.02;
      s.bands.srd_ref = 1.02e-3; s.bands.srd_rtol = 0.10;
      s.has_bands = true;
    } else if (c.gs == 10.0) {
      s.bands.obj_ref = 5.06e-1; s.bands.obj_rtol = 0.02;
      s.bands.it_lo = 100; s.bands.it_hi = 122;
      s.has_bands = true;
    }
    rows.push_back(s);

    s.theta = kHalf;
    s.theta_label = "theta0/2^k";
    s.ref_iters = c.it_half; s.ref_cg_ave = c.cg_half;
    rows.push_back(s);

    s.method = "admmcg";
    s.theta = {};
    s.theta_label = "";
    s.has_bands = false;
    s.bands = {};
    s.ref_iters = c.it_cg; s.ref_cg_ave = c.cg_cg;
    rows.push_back(s);
  }
  return rows;
}

std::vector<RowSpec> table4_rows() {
  std::vector<RowSpec> rows;
  const ThetaSchedule k13 = ThetaSchedule::geometric(1.0 / 1.3);
  struct Case { double gs, b0, b1, it_cube, cg_cube, it_geo, cg_geo,
                it_cg, cg_cg, obj, srd; };
  const Case cases[] = {
      {1, 8, 8, 34, 4.62, 44, 2.16, 33, 20.00, 1.19e3, 0.816},
      {10, 8, 8, 33, 4.70, 46, 2.17, 32, 20.13, 1.19e3, 0.816},
      {50, 10, 10, 37, 3.84, 49, 2.18, 30, 19.13, 1.20e3, 0.819},
      {500, 10, 10, 46, 3.28, 57, 2.44, 35, 17.97, 1.25e3, 0.836},
  };
  for (const auto& c : cases) {
    RowSpec s;
    s.problem = "example4";
    s.m = 64;
    s.gamma_s = c.gs;
    s.beta0 = c.b0;
    s.beta1 = c.b1;

    s.method = "inadmm";
    s.theta = kCube;
    s.theta_label = "theta0/k^3";
    s.ref_iters = c.it_cube; s.ref_cg_ave = c.cg_cube;
    s.ref_obj = c.obj; s.ref_srd = c.srd;
    if (c.gs == 1.0 || c.gs == 500.0) {
      s.bands.obj_ref = c.obj; s.bands.obj_rtol = 0.02;
      s.bands.srd_ref = c.srd; s.bands.srd_rtol = 0.02;
      s.has_bands = true;
    }
    rows.push_back(s);

    s.theta = k13;
    s.theta_label = "theta0/1.3^k";
    s.ref_iters = c.it_geo; s.ref_cg_ave = c.cg_geo;
    rows.push_back(s);

    s.method = "admmcg";
    s.theta = {};
    s.theta_label = "";
    s.has_bands = false;
    s.bands = {};
    s.ref_iters = c.it_cg; s.ref_cg_ave = c.cg_cg;
    rows.push_back(s);
  }
  return rows;
}

}  // namespace

std::vector<TableRow> reproduce_table(int table_id, int mesh_cap,
                                      const std::string& out_dir) {
  if (mesh_cap != 64 && mesh_cap != 128 && mesh_cap != 256)
    throw ConfigError("mesh cap must be 64, 128, or 256 cells");
  std::vector<RowSpec> specs;
  switch (table_id) {
    case 1: specs = table1_rows(); break;
    case 2: specs = table2_rows(); break;
    case 3: specs = table3_rows(); break;
    case 4: specs = table4_rows(); break;
    default: throw ConfigError("table id must be in 1..4");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw ConfigError("cannot create out_dir '" + out_dir + "': " + ec.message());

  std::vector<TableRow> rows;
  for (const auto& spec : specs) {
    TableRow row;
    row.method = spec.method;
    row.theta_label = spec.theta_label;
    row.m = spec.m;
    row.gamma_s = spec.gamma_s;
    row.beta0 = spec.beta0;
    row.beta1 = spec.beta1;
    row.ref_iterations = spec.ref_iters;
    row.ref_err = spec.ref_err;
    row.ref_obj = spec.ref_obj;
    row.ref_srd = spec.ref_srd;
    row.ref_cg_ave = spec.ref_cg_ave;

    if (spec.m > mesh_cap) {
      row.verdict = "skipped";
      rows.push_back(row);
      continue;
    }

    try {
      RunConfig cfg;
      cfg.problem = spec.problem;
      cfg.gamma_s = spec.gamma_s;
      cfg.m = cfg.nt = spec.m;
      cfg.solver = spec.method;
      cfg.params.beta0 = spec.beta0;
      cfg.params.beta1 = spec.beta1;
      if (spec.method == "inadmm") cfg.params.theta = spec.theta;
      cfg.out_dir = out_dir + "/" + row_slug(spec);
      cfg.validate();

      std::filesystem::create_directories(cfg.out_dir, ec);
      const Problem prob = discretize(resolve_problem(cfg), cfg.m, cfg.nt);
      const SolveReport report = solve_only(prob, cfg);
      const Metrics metrics = compute_metrics(prob, report);
      write_iterations_csv(cfg.out_dir + "/iterations.csv", report.records);

      row.ran = true;
      row.status = report.status;
      row.iterations = report.iterations();
      row.err_u = metrics.err_u;
      row.obj = metrics.obj;
      row.srd = metrics.srd;
      row.cg_ave = report.cg_ave;
      row.cg_max = report.cg_max;
      row.wall_s = report.wall_s;
      row.verdict = check_bands(spec, row);
    } catch (const std::exception& e) {
      row.verdict = std::string("error (") + e.what() + ")";
    }
    rows.push_back(row);
  }

  std::ofstream csv(out_dir + "/table" + std::to_string(table_id) + ".csv");
  csv << "method,theta,m,gamma_s,beta0,beta1,status,iterations,err_u,obj,srd,"
         "cg_ave,cg_max,wall_s,ref_iterations,ref_err,ref_obj,ref_srd,"
         "ref_cg_ave,verdict\n";
  for (const auto& r : rows) {
    csv << r.method << ',' << r.theta_label << ',' << r.m << ',' << fmt(r.gamma_s)
        << ',' << fmt(r.beta0) << ',' << fmt(r.beta1) << ','
        << (r.ran ? status_name(r.status) : "skipped") << ',' << r.iterations
        << ',' << fmt(r.err_u) << ',' << fmt(r.obj) << ',' << fmt(r.srd) << ','
        << fmt(r.cg_ave) << ',' << r.cg_max << ',' << fmt(r.wall_s) << ','
        << fmt(r.ref_iterations) << ',' << fmt(r.ref_err) << ',' << fmt(r.ref_obj)
        << ',' << fmt(r.ref_srd) << ',' << fmt(r.ref_cg_ave) << ',' << r.verdict
        << '\n';
  }
  return rows;
}

std::string format_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-8s %-14s %5s %8s %6s %10s %10s %10s %9s %s\n",
                "method", "theta", "m", "gamma_s", "iters", "err_u", "obj",
                "srd", "cg_ave", "verdict");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line),
                  "%-8s %-14s %5d %8.3g %6d %10.3e %10.4e %10.3e %9.2f %s\n",
                  r.method.c_str(), r.theta_label.c_str(), r.m, r.gamma_s,
                  r.iterations, r.err_u, r.obj, r.srd, r.cg_ave,
                  r.verdict.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace paropt
