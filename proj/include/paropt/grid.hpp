#pragma once

#include <array>
#include <vector>

#include "paropt/common.hpp"

namespace paropt {

// Axis-aligned control region [x_lo,x_hi] x [y_lo,y_hi] inside the unit
// square. The full square means the control acts on the entire domain.
struct Rect {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;

  static Rect entire() { return Rect{0.0, 1.0, 0.0, 1.0}; }
  bool is_entire() const {
    return x_lo == 0.0 && x_hi == 1.0 && y_lo == 0.0 && y_hi == 1.0;
  }
};

struct GridSpec {
  int m = 64;        // cells per spatial dimension, h = 1/m
  int nt = 64;       // time steps, tau = T/nt
  double T = 1.0;    // final time
  Rect subdomain = Rect::entire();

  void validate() const;  // throws ConfigError
};

// Uniform triangulation of the unit square: each cell is split along the
// (i,j)->(i+1,j+1) diagonal. Only interior nodes carry degrees of freedom
// (homogeneous Dirichlet). Node ordering is row-major by (j,i).
struct Grid {
  int m = 0;
  int nt = 0;
  double T = 1.0;
  double h = 0.0;
  double tau = 0.0;

  int ns = 0;  // interior nodes, (m-1)^2
  int nc = 0;  // control nodes

  // Interior-node coordinates, ns x 2.
  Eigen::MatrixX2d coords;

  // Triangles as triples of vertex ids on the full (m+1)^2 vertex grid.
  std::vector<std::array<int, 3>> triangles;

  // Vertex id -> interior dof index, -1 on the boundary.
  std::vector<int> dof_of_vertex;

  // Sorted interior dof indices lying in the closed subdomain.
  std::vector<int> control_nodes;

  bool entire_control() const { return nc == ns; }

  int vertex_id(int i, int j) const { return j * (m + 1) + i; }
};

// P1 finite-element operators on the interior dofs.
struct AssembledOperators {
  SpMat M;      // mass, ns x ns
  SpMat K;      // stiffness (no diffusion coefficient), ns x ns
  SpMat Ma0;    // reaction mass a0*M, ns x ns
  SpMat MG;     // principal sub-block of M on control nodes, nc x nc
  SpMat B;      // coupling block M(:, control nodes), ns x nc
  Vec lump_G;   // row sums of MG (nodal quadrature weights for the L1 norm)
};

Grid build_grid(const GridSpec& spec);

AssembledOperators assemble(const Grid& grid, double nu, double a0);

// Zero-extension of control-node values to all interior dofs and its
// left inverse (restriction).
Vec extend_by_zero(const Grid& grid, const Vec& on_control_nodes);
Vec restrict_to_control(const Grid& grid, const Vec& on_interior_nodes);

}  // namespace paropt
