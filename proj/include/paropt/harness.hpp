#pragma once

#include <string>
#include <vector>

#include "paropt/config.hpp"

namespace paropt {

struct Metrics {
  double srd = std::numeric_limits<double>::quiet_NaN();
  double obj = std::numeric_limits<double>::quiet_NaN();
  double err_u = std::numeric_limits<double>::quiet_NaN();
};

// Final-iterate metrics: SRD and Obj on the feasible iterate z, err_u on u
// against the interpolated exact control when one exists.
Metrics compute_metrics(const Problem& prob, const SolveReport& report);

// Solves per config and writes iterations.csv, summary.json, and field
// snapshots for every requested time under cfg.out_dir.
SolveReport run(const RunConfig& cfg);

// Dispatch on cfg.solver without touching the filesystem.
SolveReport solve_only(const Problem& prob, const RunConfig& cfg);

void write_iterations_csv(const std::string& path,
                          const std::vector<IterationRecord>& records);
std::vector<IterationRecord> read_iterations_csv(const std::string& path);

// Plain-text grid dump of one time level, zero-extended to the interior
// nodes for control fields; '#'-prefixed header, one line per grid row.
void write_snapshot(const std::string& path, const Grid& grid, const Vec& values,
                    const std::string& field, int level);

// One benchmark-table row: configuration, computed results, reference
// values, and the verdict against the shipped acceptance bands.
struct TableRow {
  std::string method;
  std::string theta_label;
  int m = 0;
  double gamma_s = 0.0;
  double beta0 = 0.0, beta1 = 0.0;

  bool ran = false;
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double obj = std::numeric_limits<double>::quiet_NaN();
  double srd = std::numeric_limits<double>::quiet_NaN();
  double cg_ave = 0.0;
  int cg_max = 0;
  double wall_s = 0.0;

  double ref_iterations = std::numeric_limits<double>::quiet_NaN();
  double ref_err = std::numeric_limits<double>::quiet_NaN();
  double ref_obj = std::numeric_limits<double>::quiet_NaN();
  double ref_srd = std::numeric_limits<double>::quiet_NaN();
  double ref_cg_ave = std::numeric_limits<double>::quiet_NaN();

  std::string verdict;  // pass | FAIL(...) | info | skipped | error(...)
};

// Runs every row of the requested benchmark table up to the mesh cap
// (cap = 64, 128, or 256 cells), writes per-row artifacts and a table CSV
// under out_dir, and returns the rows. Row failures are isolated.
std::vector<TableRow> reproduce_table(int table_id, int mesh_cap,
                                      const std::string& out_dir);

std::string format_table(const std::vector<TableRow>& rows);

}  // namespace paropt
