#pragma once

#include <memory>

#include "paropt/grid.hpp"

namespace paropt {

// Backward-Euler / P1 discretization of the state equation
//   dy/dt - nu*Lap(y) + a0*y = chi_G u + f,   y=0 on the boundary, y(0)=phi.
//
// One sparse factorization of the time-step operator A = M + tau*(nu*K + Ma0)
// is computed here and reused by every forward and adjoint sweep. Immutable
// after construction; share via pointer.
class Discretization {
 public:
  Discretization(const GridSpec& spec, double nu, double a0);

  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const Grid& grid() const { return grid_; }
  const AssembledOperators& ops() const { return ops_; }
  const SpMat& A() const { return A_; }
  double tau() const { return grid_.tau; }
  double nu() const { return nu_; }
  double a0() const { return a0_; }
  int ns() const { return grid_.ns; }
  int nc() const { return grid_.nc; }
  int nt() const { return grid_.nt; }

  Vec solve_A(const Vec& rhs) const { return A_fac_.solve(rhs); }
  Vec solve_MG(const Vec& rhs) const { return MG_fac_.solve(rhs); }

  // L^2(G) inner product: tau * sum_{n=1..nt} u1_n' MG u2_n.
  double dot_U(const ControlField& u1, const ControlField& u2) const;
  double norm_U(const ControlField& u) const;

  // L^2(Q) inner product over levels 1..nt (level 0 carries no quadrature
  // weight under the right-endpoint rule). Accepts ns x nt or ns x (nt+1).
  double dot_Y(const Mat& y1, const Mat& y2) const;
  double norm_Y(const Mat& y) const;

  // Nodal-quadrature L^1(G) norm: tau * sum_n lump_G' |z_n|.
  double norm_L1_U(const ControlField& z) const;

  ControlField zero_control() const;

 private:
  Grid grid_;
  AssembledOperators ops_;
  SpMat A_;
  Eigen::SimplicialLDLT<SpMat> A_fac_;
  Eigen::SimplicialLDLT<SpMat> MG_fac_;
  double nu_ = 1.0;
  double a0_ = 0.0;

  // Strips a possible level-0 column so both trajectory shapes are accepted.
  Eigen::Block<const Mat> levels(const Mat& y, const char* what) const;
};

using DiscPtr = std::shared_ptr<const Discretization>;

// Forward sweep: y0 = phi, then A y_n = M y_{n-1} + tau*(B u_n + M f_n).
// Null pointers mean the term is absent. Realizes S(u) when f and phi are
// the problem data, S(0) when u is null, and Sbar(u) when f and phi are null.
StateTrajectory solve_forward(const Discretization& disc,
                              const ControlField* u,
                              const SpaceTimeField* f,
                              const Vec* phi);

// Linear part of the control-to-state map (zero data).
StateTrajectory apply_Sbar(const Discretization& disc, const ControlField& u);

// Exact discrete adjoint of apply_Sbar with respect to dot_U/dot_Y:
// backward sweep A p_n = M p_{n+1} + tau*M w_n with p_{nt+1} = 0, then the
// Riesz lift MG v_n = B' p_n (v_n = p_n for entire-domain control).
ControlField apply_Sbar_star(const Discretization& disc,
                             const SpaceTimeField& w);

}  // namespace paropt
