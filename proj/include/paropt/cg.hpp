#pragma once

#include <functional>
#include <vector>

#include "paropt/reduced.hpp"

namespace paropt {

enum class CgStatus { Converged, IterationCap };

struct CgOutcome {
  ControlField u;
  int iterations = 0;
  double final_residual = 0.0;  // true ||sigma(u)||_U, recomputed at exit
  std::vector<double> residual_history;  // recursive ||r||_U per step
  CgStatus status = CgStatus::Converged;
};

// Called after every CG update with the step count, the current iterate,
// and the recursive residual norm.
using CgStepObserver =
    std::function<void(int, const ControlField&, double)>;

// Matrix-free CG on H u = d in the dot_U inner product, warm-started at u0.
// Exits at the first iterate with ||H u - d||_U <= theta; the recursive
// residual drives the loop and the exit is confirmed against a recomputed
// H u - d so the certificate holds independently of the recursion.
CgOutcome cg_solve(const ReducedOperator& op, const ControlField& d,
                   const ControlField& u0, double theta,
                   const CgStepObserver& observer = {});

}  // namespace paropt
