#include "paropt/admm.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace paropt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

void ThetaSchedule::validate() const {
  switch (kind) {
    case Kind::Geometric:
      if (!(q > 0.0) || !(q < 1.0))
        throw ConfigError("geometric theta schedule requires q in (0,1)");
      break;
    case Kind::Algebraic:
      if (!(alpha > 1.0))
        throw ConfigError("algebraic theta schedule requires alpha > 1");
      break;
    case Kind::Fixed:
      if (!(fixed > 0.0))
        throw ConfigError("fixed theta schedule requires a positive tolerance");
      break;
  }
}

void AdmmParams::validate() const {
  if (!(beta0 > 0.0) || !(beta1 > 0.0))
    throw ConfigError("beta0 and beta1 must be positive");
  if (!(eta_base > 1.0))
    throw ConfigError("eta_base must exceed 1 so that sum eta_k is finite");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_outer < 1) throw ConfigError("max_outer must be >= 1");
  if (!(exact_threshold > 0.0))
    throw ConfigError("exact_threshold must be positive");
  theta.validate();
}

double AdmmParams::eta(int k) const { return std::pow(eta_base, -k); }

double theta_value(const ThetaSchedule& schedule, int k, double theta0,
                   double floor_value) {
  double raw = 0.0;
  switch (schedule.kind) {
    case ThetaSchedule::Kind::Geometric:
      raw = theta0 * std::pow(schedule.q, k);
      break;
    case ThetaSchedule::Kind::Algebraic:
      raw = (k == 0) ? theta0 : theta0 / std::pow(static_cast<double>(k), schedule.alpha);
      break;
    case ThetaSchedule::Kind::Fixed:
      raw = schedule.fixed;
      break;
  }
  return std::max(raw, floor_value);
}

double beta_update(const Discretization& disc, double beta_cur, double beta_prev,
                   double eta, const ControlField& z_new,
                   const ControlField& z_old, const ControlField& u_new) {
  if (eta < 0.0) throw ConfigError("beta_update: eta must be >= 0");
  const double primal_gap = beta_prev * disc.norm_U(z_old - z_new);
  const double dual_gap = 0.25 * disc.norm_U(u_new - z_new);
  if (primal_gap < dual_gap) return (1.0 + eta) * beta_cur;
  if (primal_gap > dual_gap) return beta_cur / (1.0 + eta);
  return beta_cur;
}

Residuals compute_residuals(const Discretization& disc, const ControlField& u,
                            const ControlField& z, const ControlField& z_prev,
                            double beta) {
  Residuals res;
  const double dz = disc.norm_U(z - z_prev);
  if (dz == 0.0) {
    res.pr = 0.0;
  } else {
    const double denom = disc.norm_U(z_prev);
    res.pr = (denom == 0.0) ? kInf : beta * dz / std::max(denom, 1e-12);
  }
  const double du = disc.norm_U(u - z);
  if (du == 0.0) {
    res.dr = 0.0;
  } else {
    res.dr = du / std::max(disc.norm_U(u), disc.norm_U(z));
  }
  return res;
}

SolveReport run_inadmm(const Problem& prob, const AdmmParams& params,
                       const StepObserver& observer) {
  params.validate();
  const Discretization& disc = *prob.disc;
  const auto t_start = Clock::now();

  ControlField u = disc.zero_control();
  ControlField z = u, lambda = u;

  ReducedOperator op(prob, params.beta0);

  double theta0 = params.theta0;
  if (!(theta0 > 0.0) && params.theta.kind != ThetaSchedule::Kind::Fixed)
    theta0 = 0.5 * disc.norm_U(op.sigma(u, z, lambda));

  const double yd_norm = disc.norm_Y(prob.yd);

  SolveReport report;
  report.theta0_used = theta0;
  report.status = SolveStatus::MaxIter;

  double beta_k = params.beta0;
  double beta_km1 = params.beta0;
  long cg_total = 0;

  for (int k = 0; k < params.max_outer; ++k) {
    const auto t_iter = Clock::now();
    op.set_beta(beta_k);
    const double theta_k =
        theta_value(params.theta, k, theta0, params.exact_threshold);

    const ControlField d = op.assemble_d(z, lambda);
    CgOutcome cg = cg_solve(op, d, u, theta_k);
    if (cg.status == CgStatus::IterationCap) {
      std::ostringstream os;
      os << "CG hit the iteration cap at outer step " << k
         << " (theta=" << theta_k << ", residual=" << cg.final_residual << ")";
      throw SolverError(os.str());
    }
    ControlField u_new = std::move(cg.u);
    ControlField z_new = z_update(u_new, lambda, beta_k, prob.gamma_s, prob.bounds);
    ControlField lambda_new = lambda - beta_k * (u_new - z_new);

    const Residuals res = compute_residuals(disc, u_new, z_new, z, beta_k);
    const double pr = (k == 0) ? kInf : res.pr;  // PR needs two z iterates

    const StateTrajectory y = prob.solve_state(z_new);
    const SpaceTimeField r = y.rightCols(disc.nt()) - prob.yd;
    const double track = disc.dot_Y(r, r);
    const double obj = 0.5 * prob.gamma_d * track + 0.5 * disc.dot_U(z_new, z_new) +
                       prob.gamma_s * disc.norm_L1_U(z_new);
    const double srd = (yd_norm == 0.0) ? kNaN : std::sqrt(std::max(0.0, track)) / yd_norm;
    const double err_u =
        prob.u_star ? disc.norm_U(u_new - *prob.u_star) : kNaN;

    const double sigma_norm = disc.norm_U(op.sigma(u_new, z, lambda));

    IterationRecord rec;
    rec.k = k + 1;
    rec.beta = beta_k;
    rec.theta = theta_k;
    rec.cg_iters = cg.iterations;
    rec.pr = pr;
    rec.dr = res.dr;
    rec.srd = srd;
    rec.obj = obj;
    rec.err_u = err_u;
    rec.wall_ms = ms_since(t_iter);
    report.records.push_back(rec);
    cg_total += cg.iterations;
    report.cg_max = std::max(report.cg_max, cg.iterations);

    if (observer) {
      OuterStepInfo info{k,     beta_k, theta_k, sigma_norm, cg.iterations,
                         u,     z,      lambda,  u_new,      z_new,
                         lambda_new};
      observer(info);
    }

    if (disc.norm_U(u_new) > 1e12) {
      std::ostringstream os;
      os << "iterates diverged at outer step " << k
         << " (||u||=" << disc.norm_U(u_new) << ", beta=" << beta_k << ")";
      throw SolverError(os.str());
    }

    double beta_next;
    if (k == 0) {
      beta_next = params.beta1;
    } else {
      beta_next =
          beta_update(disc, beta_k, beta_km1, params.eta(k), z_new, z, u_new);
    }

    u = std::move(u_new);
    z = std::move(z_new);
    lambda = std::move(lambda_new);
    beta_km1 = beta_k;
    beta_k = beta_next;

    if (k >= 1 && std::max(pr, res.dr) <= params.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
  }

  report.u = std::move(u);
  report.z = std::move(z);
  report.lambda = std::move(lambda);
  report.cg_ave = report.records.empty()
                      ? 0.0
                      : static_cast<double>(cg_total) / report.records.size();
  report.g0_evaluations = op.g0_evaluations();
  report.wall_s = ms_since(t_start) / 1e3;
  return report;
}

SolveReport run_admm_exact(const Problem& prob, const AdmmParams& params,
                           const StepObserver& observer) {
  AdmmParams p = params;
  p.theta = ThetaSchedule::fixed_at(params.exact_threshold);
  p.theta0 = 0.0;
  return run_inadmm(prob, p, observer);
}

SolveReport run_pgd(const Problem& prob, const AdmmParams& params) {
  params.validate();
  if (prob.gamma_s != 0.0)
    throw ConfigError("run_pgd requires gamma_s = 0 (smooth objective)");
  const Discretization& disc = *prob.disc;
  const auto t_start = Clock::now();
  const double yd_norm = disc.norm_Y(prob.yd);
  constexpr double kArmijoC = 1e-4;
  constexpr int kMaxHalvings = 50;

  // Armijo descent needs feasible iterates; project the zero start.
  ControlField u = project_box(disc.zero_control(), prob.bounds);

  SolveReport report;
  report.status = SolveStatus::MaxIter;

  for (int k = 0; k < params.max_outer; ++k) {
    const auto t_iter = Clock::now();

    const StateTrajectory y = prob.solve_state(u);
    const SpaceTimeField r = y.rightCols(disc.nt()) - prob.yd;
    const double j_cur =
        0.5 * prob.gamma_d * disc.dot_Y(r, r) + 0.5 * disc.dot_U(u, u);
    ControlField grad = u;
    if (prob.gamma_d != 0.0) grad += prob.gamma_d * apply_Sbar_star(disc, r);

    double s = 1.0;
    bool accepted = false;
    ControlField u_next;
    double j_next = 0.0, track_next = 0.0;
    for (int halving = 0; halving <= kMaxHalvings; ++halving) {
      u_next = project_box(u - s * grad, prob.bounds);
      const ControlField gmap = (u - u_next) / s;
      const double gmap_sq = disc.dot_U(gmap, gmap);
      const StateTrajectory y_t = prob.solve_state(u_next);
      const SpaceTimeField r_t = y_t.rightCols(disc.nt()) - prob.yd;
      track_next = disc.dot_Y(r_t, r_t);
      j_next = 0.5 * prob.gamma_d * track_next + 0.5 * disc.dot_U(u_next, u_next);
      if (j_next <= j_cur - kArmijoC * s * gmap_sq) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }

    IterationRecord rec;
    rec.k = k + 1;
    rec.cg_iters = 0;
    rec.pr = kNaN;
    rec.theta = kNaN;
    rec.beta = kNaN;

    if (!accepted) {
      report.status = SolveStatus::StepFailure;
      rec.dr = kNaN;
      rec.obj = j_cur;
      rec.wall_ms = ms_since(t_iter);
      report.records.push_back(rec);
      break;
    }

    const double rel_change =
        disc.norm_U(u_next - u) / std::max(1.0, disc.norm_U(u));
    rec.dr = rel_change;  // stopping quantity; see README on column meaning
    rec.obj = j_next;
    rec.srd =
        (yd_norm == 0.0) ? kNaN : std::sqrt(std::max(0.0, track_next)) / yd_norm;
    rec.err_u = prob.u_star ? disc.norm_U(u_next - *prob.u_star) : kNaN;
    rec.wall_ms = ms_since(t_iter);
    report.records.push_back(rec);

    u = std::move(u_next);

    if (rel_change <= params.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
  }

  report.u = u;
  report.z = std::move(u);
  report.lambda = disc.zero_control();
  report.wall_s = ms_since(t_start) / 1e3;
  return report;
}

}  // namespace paropt
