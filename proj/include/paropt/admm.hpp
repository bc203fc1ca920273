#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "paropt/cg.hpp"

namespace paropt {

struct ThetaSchedule {
  enum class Kind { Geometric, Algebraic, Fixed };
  Kind kind = Kind::Geometric;
  double q = 0.5;        // geometric: theta0 * q^k
  double alpha = 3.0;    // algebraic: theta0 / k^alpha
  double fixed = 1e-6;   // fixed: constant tolerance

  static ThetaSchedule geometric(double q) { return {Kind::Geometric, q, 3.0, 1e-6}; }
  static ThetaSchedule algebraic(double alpha) { return {Kind::Algebraic, 0.5, alpha, 1e-6}; }
  static ThetaSchedule fixed_at(double value) { return {Kind::Fixed, 0.5, 3.0, value}; }

  void validate() const;
};

struct AdmmParams {
  double beta0 = 2.0;
  double beta1 = 3.0;
  double eta_base = 2.0;  // eta_k = eta_base^{-k}
  ThetaSchedule theta;
  double theta0 = 0.0;    // <= 0 requests the default ||sigma_0(u0)||/2
  double tol = 1e-4;
  int max_outer = 1000;
  double exact_threshold = 1e-6;  // floor under which the subproblem counts as exact

  void validate() const;
  double eta(int k) const;
};

// theta_k for outer step k, clamped below at the exact-solve floor.
double theta_value(const ThetaSchedule& schedule, int k, double theta0,
                   double floor_value);

// Self-adaptive penalty rule: grow when the primal side lags, shrink when
// the dual side lags, leave unchanged on ties.
double beta_update(const Discretization& disc, double beta_cur, double beta_prev,
                   double eta, const ControlField& z_new,
                   const ControlField& z_old, const ControlField& u_new);

struct Residuals {
  double pr = 0.0;
  double dr = 0.0;
};

// PR = beta ||z - z_prev|| / ||z_prev||, DR = ||u - z|| / max(||u||,||z||),
// with zero-denominator guards (see README for the sentinel rules).
Residuals compute_residuals(const Discretization& disc, const ControlField& u,
                            const ControlField& z, const ControlField& z_prev,
                            double beta);

struct IterationRecord {
  int k = 0;  // 1-based iterate index
  double beta = std::numeric_limits<double>::quiet_NaN();
  double theta = std::numeric_limits<double>::quiet_NaN();
  int cg_iters = 0;
  double pr = std::numeric_limits<double>::quiet_NaN();
  double dr = std::numeric_limits<double>::quiet_NaN();
  double srd = std::numeric_limits<double>::quiet_NaN();
  double obj = std::numeric_limits<double>::quiet_NaN();
  double err_u = std::numeric_limits<double>::quiet_NaN();
  double wall_ms = 0.0;
};

enum class SolveStatus { Converged, MaxIter, StepFailure };

struct SolveReport {
  std::vector<IterationRecord> records;
  ControlField u, z, lambda;
  SolveStatus status = SolveStatus::MaxIter;
  double cg_ave = 0.0;
  int cg_max = 0;
  double theta0_used = 0.0;
  int g0_evaluations = 0;
  double wall_s = 0.0;

  int iterations() const { return static_cast<int>(records.size()); }
  const IterationRecord& last() const { return records.back(); }
};

// Both triples around one outer step, for property probes.
struct OuterStepInfo {
  int k = 0;  // 0-based step producing iterate k+1
  double beta = 0.0;
  double theta = 0.0;
  double sigma_norm = 0.0;  // ||sigma_k(u_{k+1})||_U recomputed directly
  int cg_iterations = 0;
  const ControlField& u_prev;
  const ControlField& z_prev;
  const ControlField& lambda_prev;
  const ControlField& u_new;
  const ControlField& z_new;
  const ControlField& lambda_new;
};

using StepObserver = std::function<void(const OuterStepInfo&)>;

// Inexact ADMM: CG solves the u-subproblem to ||sigma_k|| <= theta_k, the
// z-update is the closed-form prox, the multiplier update is exact.
SolveReport run_inadmm(const Problem& prob, const AdmmParams& params,
                       const StepObserver& observer = {});

// Classic ADMM baseline: every subproblem solved to the exact-solve floor.
SolveReport run_admm_exact(const Problem& prob, const AdmmParams& params,
                           const StepObserver& observer = {});

// Projected gradient with Armijo backtracking; smooth problems only.
SolveReport run_pgd(const Problem& prob, const AdmmParams& params);

}  // namespace paropt
