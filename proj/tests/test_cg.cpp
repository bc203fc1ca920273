#include <doctest.h>

#include <random>

#include "paropt/cg.hpp"

using namespace paropt;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(31);
  return gen;
}

ControlField randn(int rows, int cols) {
  static std::normal_distribution<double> dist;
  ControlField m(rows, cols);
  for (int i = 0; i < m.size(); ++i) m.data()[i] = dist(rng());
  return m;
}

Problem tiny_problem() {
  // gamma_d large enough that Sbar*Sbar shapes the spectrum and CG needs a
  // few dozen steps; the dense instance is 9 nodes x 4 levels.
  ProblemSpec spec = example1();
  spec.gamma_d = 4e4;
  return discretize(spec, 4, 4);
}

// H as a dense matrix on stacked space-time coefficients, built column by
// column through apply_H on unit fields.
Mat dense_H(const ReducedOperator& op) {
  const Discretization& disc = *op.problem().disc;
  const int n = disc.nc() * disc.nt();
  Mat H(n, n);
  for (int j = 0; j < n; ++j) {
    ControlField e = disc.zero_control();
    e.data()[j] = 1.0;
    const ControlField col = op.apply_H(e);
    H.col(j) = Eigen::Map<const Vec>(col.data(), n);
  }
  return H;
}

}  // namespace

TEST_CASE("trivial solve returns immediately") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 2.0);
  const ControlField zero = disc.zero_control();
  const CgOutcome out = cg_solve(op, zero, zero, 1e-8);
  CHECK(out.iterations == 0);
  CHECK(out.u.norm() == 0.0);
  CHECK(out.status == CgStatus::Converged);
}

TEST_CASE("cg matches a dense direct solve on the tiny instance") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 1.5);
  const int n = disc.nc() * disc.nt();

  // H is self-adjoint in dot_U, not in the Euclidean sense; solve with LU.
  const Mat H = dense_H(op);
  const ControlField d = randn(disc.nc(), disc.nt());
  const Vec x_dense = H.partialPivLu().solve(Eigen::Map<const Vec>(d.data(), n));

  const CgOutcome out = cg_solve(op, d, disc.zero_control(), 1e-12);
  CHECK(out.status == CgStatus::Converged);
  const Vec x_cg = Eigen::Map<const Vec>(out.u.data(), n);
  CHECK((x_cg - x_dense).norm() <= 1e-8 * x_dense.norm());
  CHECK(out.final_residual <= 1e-12);
}

TEST_CASE("H-norm error is nonincreasing across cg steps") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 1.0);
  const int n = disc.nc() * disc.nt();
  const Mat H = dense_H(op);
  const ControlField d = randn(disc.nc(), disc.nt());
  const Vec x = H.partialPivLu().solve(Eigen::Map<const Vec>(d.data(), n));
  ControlField exact = disc.zero_control();
  Eigen::Map<Vec>(exact.data(), n) = x;

  double prev = std::numeric_limits<double>::infinity();
  int checked = 0;
  auto probe = [&](int, const ControlField& u, double) {
    const ControlField e = u - exact;
    const double h_err = std::sqrt(std::max(0.0, disc.dot_U(op.apply_H(e), e)));
    CHECK(h_err <= prev * (1.0 + 1e-10));
    prev = h_err;
    ++checked;
  };
  cg_solve(op, d, disc.zero_control(), 1e-11, probe);
  CHECK(checked >= 5);
}

TEST_CASE("recursive residual tracks the true sigma norm (drift guard)") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 2.0);
  const ControlField z = randn(disc.nc(), disc.nt());
  const ControlField lam = randn(disc.nc(), disc.nt());
  const ControlField d = op.assemble_d(z, lam);
  const double scale0 = disc.norm_U(d);  // sigma at the zero start

  int checked = 0;
  auto probe = [&](int m, const ControlField& u, double rnorm) {
    if (m % 10 != 0) return;
    const double recomputed = disc.norm_U(op.sigma(u, z, lam));
    CHECK(std::abs(recomputed - rnorm) <=
          1e-8 * recomputed + 1e-13 * scale0);
    ++checked;
  };
  cg_solve(op, d, disc.zero_control(), 1e-6 * scale0, probe);
  CHECK(checked >= 1);
}

TEST_CASE("identical inputs give identical iterate sequences") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 2.0);
  const ControlField d = randn(disc.nc(), disc.nt());
  const CgOutcome a = cg_solve(op, d, disc.zero_control(), 1e-9);
  const CgOutcome b = cg_solve(op, d, disc.zero_control(), 1e-9);
  CHECK(a.iterations == b.iterations);
  CHECK((a.u - b.u).norm() == 0.0);
  CHECK(a.residual_history == b.residual_history);
}

TEST_CASE("warm start under the tolerance does zero work") {
  const Problem prob = tiny_problem();
  const Discretization& disc = *prob.disc;
  ReducedOperator op(prob, 2.0);
  const ControlField d = randn(disc.nc(), disc.nt());
  const CgOutcome tight = cg_solve(op, d, disc.zero_control(), 1e-10);
  const CgOutcome warm = cg_solve(op, d, tight.u, 1e-6);
  CHECK(warm.iterations == 0);
  CHECK((warm.u - tight.u).norm() == 0.0);
}
