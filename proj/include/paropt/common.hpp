#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <stdexcept>
#include <string>

namespace paropt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Nodal coefficients of a function in U = L^2(G): one column per time
// level t_1..t_nt, nc rows (control nodes).
using ControlField = Eigen::MatrixXd;

// Nodal coefficients of a state on the full cylinder: one column per time
// level t_0..t_nt, ns rows (interior nodes).
using StateTrajectory = Eigen::MatrixXd;

// Fields sampled at levels t_1..t_nt only (sources, targets, adjoint data).
using SpaceTimeField = Eigen::MatrixXd;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace paropt
