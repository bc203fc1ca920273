#pragma once

#include <functional>
#include <optional>
#include <string>

#include "paropt/pde.hpp"
#include "paropt/prox.hpp"

namespace paropt {

using ScalarField2D = std::function<double(double, double)>;          // (x1,x2)
using ScalarField3D = std::function<double(double, double, double)>;  // (x1,x2,t)

// Analytic description of one control problem on the unit square:
//   min gamma_d/2 ||S(u)-y_d||^2 + 1/2 ||u||^2 + gamma_s ||u||_1,  a<=u<=b.
struct ProblemSpec {
  std::string name;
  double gamma_d = 1.0;
  double gamma_s = 0.0;
  double nu = 1.0;
  double a0 = 0.0;
  double T = 1.0;
  BoxBounds bounds;
  Rect subdomain = Rect::entire();

  ScalarField3D f;    // null means zero source
  ScalarField3D yd;   // desired state (required)
  ScalarField2D phi;  // null means zero initial datum

  // Manufactured exact solution, when one exists.
  ScalarField3D u_exact;
  ScalarField3D y_exact;

  void validate() const;
};

ProblemSpec example1();
ProblemSpec example2();
ProblemSpec example3(double gamma_s);
ProblemSpec example4(double gamma_s);

// Problem data interpolated on a concrete grid, ready for the solvers.
struct Problem {
  DiscPtr disc;
  double gamma_d = 1.0;
  double gamma_s = 0.0;
  BoxBounds bounds;
  SpaceTimeField yd;            // ns x nt, levels t_1..t_nt
  SpaceTimeField f;             // ns x nt, zero when the source is absent
  Vec phi;                      // ns, zero when the datum is absent
  bool has_f = false;
  bool has_phi = false;
  std::optional<ControlField> u_star;  // nc x nt
  std::string name;

  const SpaceTimeField* f_ptr() const { return has_f ? &f : nullptr; }
  const Vec* phi_ptr() const { return has_phi ? &phi : nullptr; }

  // S(v) including the problem data.
  StateTrajectory solve_state(const ControlField& v) const;
};

Problem discretize(const ProblemSpec& spec, int m, int nt);

// Interpolation helpers (right-endpoint time levels t_1..t_nt).
SpaceTimeField interpolate_field(const Grid& grid, const ScalarField3D& g);
ControlField interpolate_control(const Grid& grid, const ScalarField3D& g);
Vec interpolate_initial(const Grid& grid, const ScalarField2D& g);

// Smooth part J(v) = gamma_d/2 ||S(v)-y_d||_Y^2 + 1/2 ||v||_U^2.
double objective_J(const Problem& prob, const ControlField& v);

// J(z) + gamma_s ||z||_1,U evaluated with the nodal L1 quadrature.
double objective_full(const Problem& prob, const ControlField& z);

}  // namespace paropt
