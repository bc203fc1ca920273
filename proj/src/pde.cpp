#include "paropt/pde.hpp"

#include <cmath>

namespace paropt {

Discretization::Discretization(const GridSpec& spec, double nu, double a0)
    : grid_(build_grid(spec)), ops_(assemble(grid_, nu, a0)), nu_(nu), a0_(a0) {
  A_ = ops_.M + grid_.tau * (nu * ops_.K + ops_.Ma0);
  A_fac_.compute(A_);
  if (A_fac_.info() != Eigen::Success)
    throw NumericError("factorization of the time-step operator failed");
  MG_fac_.compute(ops_.MG);
  if (MG_fac_.info() != Eigen::Success)
    throw NumericError("factorization of the control mass block failed");
}

double Discretization::dot_U(const ControlField& u1,
                             const ControlField& u2) const {
  if (u1.rows() != grid_.nc || u2.rows() != grid_.nc ||
      u1.cols() != grid_.nt || u2.cols() != grid_.nt)
    throw DimensionError("dot_U: control fields do not match the grid");
  return grid_.tau * (u1.cwiseProduct(ops_.MG * u2)).sum();
}

double Discretization::norm_U(const ControlField& u) const {
  return std::sqrt(std::max(0.0, dot_U(u, u)));
}

Eigen::Block<const Mat> Discretization::levels(const Mat& y,
                                               const char* what) const {
  if (y.rows() != grid_.ns)
    throw DimensionError(std::string(what) + ": field does not match the grid");
  if (y.cols() == grid_.nt) return y.block(0, 0, y.rows(), y.cols());
  if (y.cols() == grid_.nt + 1) return y.block(0, 1, y.rows(), grid_.nt);
  throw DimensionError(std::string(what) + ": unexpected number of time levels");
}

double Discretization::dot_Y(const Mat& y1, const Mat& y2) const {
  const auto a = levels(y1, "dot_Y");
  const auto b = levels(y2, "dot_Y");
  return grid_.tau * (a.cwiseProduct(ops_.M * b)).sum();
}

double Discretization::norm_Y(const Mat& y) const {
  return std::sqrt(std::max(0.0, dot_Y(y, y)));
}

double Discretization::norm_L1_U(const ControlField& z) const {
  if (z.rows() != grid_.nc || z.cols() != grid_.nt)
    throw DimensionError("norm_L1_U: control field does not match the grid");
  return grid_.tau * (ops_.lump_G.transpose() * z.cwiseAbs()).sum();
}

ControlField Discretization::zero_control() const {
  return ControlField::Zero(grid_.nc, grid_.nt);
}

StateTrajectory solve_forward(const Discretization& disc,
                              const ControlField* u,
                              const SpaceTimeField* f,
                              const Vec* phi) {
  const Grid& g = disc.grid();
  if (u && (u->rows() != g.nc || u->cols() != g.nt))
    throw DimensionError("solve_forward: control field does not match the grid");
  if (f && (f->rows() != g.ns || f->cols() != g.nt))
    throw DimensionError("solve_forward: source field does not match the grid");
  if (phi && phi->size() != g.ns)
    throw DimensionError("solve_forward: initial datum does not match the grid");
  if ((u && !u->allFinite()) || (f && !f->allFinite()) ||
      (phi && !phi->allFinite()))
    throw DataError("solve_forward: non-finite input entries");

  StateTrajectory y(g.ns, g.nt + 1);
  y.col(0) = phi ? *phi : Vec::Zero(g.ns);

  const SpMat& M = disc.ops().M;
  const SpMat& B = disc.ops().B;
  for (int n = 1; n <= g.nt; ++n) {
    Vec rhs = f ? Vec(M * (y.col(n - 1) + g.tau * f->col(n - 1)))
                : Vec(M * y.col(n - 1));
    if (u) rhs += g.tau * (B * u->col(n - 1));
    y.col(n) = disc.solve_A(rhs);
  }
  return y;
}

StateTrajectory apply_Sbar(const Discretization& disc, const ControlField& u) {
  return solve_forward(disc, &u, nullptr, nullptr);
}

ControlField apply_Sbar_star(const Discretization& disc,
                             const SpaceTimeField& w) {
  const Grid& g = disc.grid();
  if (w.rows() != g.ns || w.cols() != g.nt)
    throw DimensionError("apply_Sbar_star: residual field does not match the grid");
  if (!w.allFinite())
    throw DataError("apply_Sbar_star: non-finite input entries");

  const SpMat& M = disc.ops().M;
  Mat p(g.ns, g.nt);
  Vec p_next = Vec::Zero(g.ns);
  for (int n = g.nt; n >= 1; --n) {
    p.col(n - 1) = disc.solve_A(M * (p_next + g.tau * w.col(n - 1)));
    p_next = p.col(n - 1);
  }

  if (g.entire_control()) return p;

  const SpMat& B = disc.ops().B;
  ControlField v(g.nc, g.nt);
  for (int n = 0; n < g.nt; ++n) v.col(n) = disc.solve_MG(B.transpose() * p.col(n));
  return v;
}

}  // namespace paropt
