#include "paropt/reduced.hpp"

namespace paropt {

ReducedOperator::ReducedOperator(const Problem& prob, double beta)
    : prob_(prob), beta_(beta) {
  if (!(beta > 0.0)) throw ConfigError("ReducedOperator: beta must be positive");
  const Discretization& d = *prob_.disc;
  if (prob_.gamma_d == 0.0) {
    g0_ = d.zero_control();
  } else {
    const StateTrajectory y0 =
        solve_forward(d, nullptr, prob_.f_ptr(), prob_.phi_ptr());
    const SpaceTimeField r = y0.rightCols(d.nt()) - prob_.yd;
    g0_ = prob_.gamma_d * apply_Sbar_star(d, r);
  }
  ++g0_evals_;
}

void ReducedOperator::set_beta(double beta) {
  if (!(beta > 0.0)) throw ConfigError("ReducedOperator: beta must be positive");
  beta_ = beta;
}

ControlField ReducedOperator::apply_H(const ControlField& u) const {
  if (prob_.gamma_d == 0.0) return (1.0 + beta_) * u;
  const Discretization& d = *prob_.disc;
  const StateTrajectory y = apply_Sbar(d, u);
  return (1.0 + beta_) * u +
         prob_.gamma_d * apply_Sbar_star(d, y.rightCols(d.nt()));
}

ControlField ReducedOperator::assemble_d(const ControlField& z,
                                         const ControlField& lambda) const {
  return beta_ * z + lambda - g0_;
}

ControlField ReducedOperator::sigma(const ControlField& u, const ControlField& z,
                                    const ControlField& lambda) const {
  if (prob_.gamma_d == 0.0) return (1.0 + beta_) * u - (beta_ * z + lambda);
  const Discretization& d = *prob_.disc;
  const StateTrajectory y = prob_.solve_state(u);
  const SpaceTimeField r = y.rightCols(d.nt()) - prob_.yd;
  return (1.0 + beta_) * u + prob_.gamma_d * apply_Sbar_star(d, r) -
         (beta_ * z + lambda);
}

}  // namespace paropt
