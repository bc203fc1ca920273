#include <doctest.h>

#include <random>

#include "paropt/reduced.hpp"

using namespace paropt;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(77);
  return gen;
}

ControlField randn(int rows, int cols) {
  static std::normal_distribution<double> dist;
  ControlField m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = dist(rng());
  return m;
}

// Small smooth problem with a moderate tracking weight so algebraic
// identities are checked away from extreme scales.
Problem small_problem(double gamma_d = 50.0) {
  ProblemSpec spec = example1();
  spec.gamma_d = gamma_d;
  return discretize(spec, 8, 8);
}

}  // namespace

TEST_CASE("sigma equals H u - d on random inputs") {
  const Problem prob = small_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ControlField u = randn(disc.nc(), disc.nt());
    const ControlField z = randn(disc.nc(), disc.nt());
    const ControlField lam = randn(disc.nc(), disc.nt());
    const ControlField direct = op.sigma(u, z, lam);
    const ControlField via_hd = op.apply_H(u) - op.assemble_d(z, lam);
    CHECK(disc.norm_U(direct - via_hd) <= 1e-12 * disc.norm_U(direct));
  }
}

TEST_CASE("gamma_d = 0 closes the forms") {
  ProblemSpec spec = example1();
  spec.gamma_d = 0.0;
  const Problem prob = discretize(spec, 6, 4);
  const Discretization& disc = *prob.disc;
  const double beta = 1.25;
  ReducedOperator op(prob, beta);
  const ControlField u = randn(disc.nc(), disc.nt());
  const ControlField z = randn(disc.nc(), disc.nt());
  const ControlField lam = randn(disc.nc(), disc.nt());
  CHECK((op.apply_H(u) - (1.0 + beta) * u).norm() == 0.0);
  const ControlField expect = (1.0 + beta) * u - beta * z - lam;
  CHECK((op.sigma(u, z, lam) - expect).norm() <= 1e-14 * expect.norm());
}

TEST_CASE("H is symmetric and coercive in dot_U") {
  const Problem prob = small_problem();
  const Discretization& disc = *prob.disc;
  const double beta = 3.0;
  ReducedOperator op(prob, beta);
  for (int trial = 0; trial < 20; ++trial) {
    const ControlField u = randn(disc.nc(), disc.nt());
    const ControlField v = randn(disc.nc(), disc.nt());
    const double huv = disc.dot_U(op.apply_H(u), v);
    const double uhv = disc.dot_U(u, op.apply_H(v));
    CHECK(std::abs(huv - uhv) <= 1e-10 * disc.norm_U(u) * disc.norm_U(v));
    const double huu = disc.dot_U(op.apply_H(u), u);
    CHECK(huu >= (1.0 + beta) * disc.dot_U(u, u) - 1e-12);
  }
}

TEST_CASE("sigma is strongly monotone with modulus 1 + beta") {
  const Problem prob = small_problem();
  const Discretization& disc = *prob.disc;
  const double beta = 0.75;
  ReducedOperator op(prob, beta);
  const ControlField z = randn(disc.nc(), disc.nt());
  const ControlField lam = randn(disc.nc(), disc.nt());
  for (int trial = 0; trial < 20; ++trial) {
    const ControlField u1 = randn(disc.nc(), disc.nt());
    const ControlField u2 = randn(disc.nc(), disc.nt());
    const double inner =
        disc.dot_U(op.sigma(u1, z, lam) - op.sigma(u2, z, lam), u1 - u2);
    CHECK(inner >= (1.0 + beta) * disc.dot_U(u1 - u2, u1 - u2) - 1e-12);
  }
}

TEST_CASE("zero offset when the target equals the free trajectory") {
  // y_d = S(0) makes g0 vanish, so d = beta z + lambda exactly.
  ProblemSpec spec = example1();
  spec.gamma_d = 25.0;
  Problem prob = discretize(spec, 6, 4);
  const Discretization& disc = *prob.disc;
  const StateTrajectory y0 =
      solve_forward(disc, nullptr, prob.f_ptr(), prob.phi_ptr());
  prob.yd = y0.rightCols(disc.nt());
  ReducedOperator op(prob, 2.0);
  CHECK(disc.norm_U(op.g0()) <= 1e-12);
  CHECK(disc.norm_U(op.assemble_d(disc.zero_control(), disc.zero_control())) <=
        1e-12);
}

TEST_CASE("g0 survives beta changes without recomputation") {
  const Problem prob = small_problem();
  ReducedOperator op(prob, 1.0);
  CHECK(op.g0_evaluations() == 1);
  const ControlField g0_before = op.g0();
  op.set_beta(4.0);
  op.set_beta(0.5);
  CHECK(op.g0_evaluations() == 1);
  CHECK((op.g0() - g0_before).norm() == 0.0);
}
