#pragma once

#include "paropt/problem.hpp"

namespace paropt {

// Reduced form of the u-subproblem: the SPD operator
//   H = (1+beta) I + gamma_d Sbar* Sbar
// together with the right-hand side d = beta*z + lambda - g0, where
// g0 = gamma_d Sbar*(S(0) - y_d) is fixed for the whole outer run and
// cached at construction. sigma(u) = H u - d is the first-order residual
// of the subproblem; ||sigma||_U certifies an inexact solve.
class ReducedOperator {
 public:
  ReducedOperator(const Problem& prob, double beta);

  double beta() const { return beta_; }
  void set_beta(double beta);  // keeps the g0 cache

  const Problem& problem() const { return prob_; }
  const ControlField& g0() const { return g0_; }
  int g0_evaluations() const { return g0_evals_; }

  // (1+beta) u + gamma_d Sbar*(Sbar u); one forward and one adjoint sweep.
  ControlField apply_H(const ControlField& u) const;

  ControlField assemble_d(const ControlField& z, const ControlField& lambda) const;

  // Direct evaluation of sigma via a full state solve; independent of the
  // H/d decomposition and of any CG recursion.
  ControlField sigma(const ControlField& u, const ControlField& z,
                     const ControlField& lambda) const;

 private:
  const Problem& prob_;
  double beta_;
  ControlField g0_;
  int g0_evals_ = 0;
};

}  // namespace paropt
