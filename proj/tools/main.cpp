#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "paropt/harness.hpp"

namespace {

int exit_code_for(const paropt::SolveReport& report) {
  return report.status == paropt::SolveStatus::Converged ? 0 : 2;
}

int cap_from_string(const std::string& cap) {
  if (cap == "2^-6") return 64;
  if (cap == "2^-7") return 128;
  if (cap == "2^-8") return 256;
  throw paropt::ConfigError("cap must be one of 2^-6, 2^-7, 2^-8");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for box-constrained sparse parabolic optimal control"};
  app.require_subcommand(1);

  std::string config_path;
  auto* cmd_run = app.add_subcommand("run", "solve one configured problem");
  cmd_run->add_option("--config", config_path, "key=value config file")
      ->required();

  int table_id = 1;
  std::string cap = "2^-6";
  std::string table_out = "table_out";
  auto* cmd_table =
      app.add_subcommand("table", "reproduce one benchmark table");
  cmd_table->add_option("--id", table_id, "table id (1..4)")->required();
  cmd_table->add_option("--cap", cap, "largest mesh: 2^-6, 2^-7, or 2^-8");
  cmd_table->add_option("--out", table_out, "output directory");

  std::string snap_config, snap_field = "u";
  double snap_t = 0.25;
  auto* cmd_snap =
      app.add_subcommand("snapshot", "solve and dump one field at one time");
  cmd_snap->add_option("--config", snap_config, "key=value config file")
      ->required();
  cmd_snap->add_option("--t", snap_t, "snapshot time")->required();
  cmd_snap->add_option("--field", snap_field, "u, z, or y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) {
      const paropt::RunConfig cfg = paropt::parse_config_file(config_path);
      const paropt::SolveReport report = paropt::run(cfg);
      const auto& last = report.records.back();
      std::printf("%s: %d iterations, obj=%.6g srd=%.6g (artifacts in %s)\n",
                  report.status == paropt::SolveStatus::Converged
                      ? "converged"
                      : "did not converge",
                  report.iterations(), last.obj, last.srd, cfg.out_dir.c_str());
      return exit_code_for(report);
    }

    if (cmd_table->parsed()) {
      const auto rows =
          paropt::reproduce_table(table_id, cap_from_string(cap), table_out);
      std::cout << paropt::format_table(rows);
      std::printf("table %d artifacts in %s\n", table_id, table_out.c_str());
      return 0;
    }

    if (cmd_snap->parsed()) {
      paropt::RunConfig cfg = paropt::parse_config_file(snap_config);
      if (snap_field != "u" && snap_field != "z" && snap_field != "y")
        throw paropt::ConfigError("field must be u, z, or y");
      std::filesystem::create_directories(cfg.out_dir);

      const paropt::ProblemSpec spec = paropt::resolve_problem(cfg);
      const paropt::Problem prob = paropt::discretize(spec, cfg.m, cfg.nt);
      const paropt::SolveReport report = paropt::solve_only(prob, cfg);
      const paropt::Grid& g = prob.disc->grid();
      const int level = static_cast<int>(std::lround(snap_t / g.tau));
      char name[64];
      std::snprintf(name, sizeof(name), "/%s_t%g.txt", snap_field.c_str(), snap_t);
      const std::string path = cfg.out_dir + name;
      if (snap_field == "y") {
        const paropt::StateTrajectory y = prob.solve_state(report.z);
        paropt::write_snapshot(path, g, y.col(std::min(level, g.nt)), "y", level);
      } else {
        if (level < 1 || level > g.nt)
          throw paropt::ConfigError("snapshot time outside the control levels");
        const paropt::ControlField& fld =
            (snap_field == "u") ? report.u : report.z;
        paropt::write_snapshot(path, g,
                               paropt::extend_by_zero(g, fld.col(level - 1)),
                               snap_field, level);
      }
      std::printf("wrote %s\n", path.c_str());
      return exit_code_for(report);
    }
  } catch (const paropt::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const paropt::SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
