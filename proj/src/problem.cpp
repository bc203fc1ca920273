#include "paropt/problem.hpp"

#include <cmath>

namespace paropt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ProblemSpec::validate() const {
  if (gamma_d < 0.0) throw ConfigError("gamma_d must be >= 0");
  if (gamma_s < 0.0) throw ConfigError("gamma_s must be >= 0");
  if (!(nu > 0.0)) throw ConfigError("nu must be positive");
  if (a0 < 0.0) throw ConfigError("a0 must be >= 0");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (!yd) throw ConfigError("problem lacks a desired state");
  bounds.validate();
}

ProblemSpec example1() {
  ProblemSpec p;
  p.name = "example1";
  p.gamma_d = 1e5;
  p.gamma_s = 0.0;
  p.nu = 1.0;
  p.a0 = 0.0;
  p.T = 1.0;
  p.bounds = BoxBounds{-0.5, 0.5};
  p.subdomain = Rect::entire();

  const double gd = p.gamma_d;
  const BoxBounds bounds = p.bounds;

  auto ybar = [](double x1, double x2, double t) {
    return (1.0 - t) * std::sin(kPi * x1) * std::sin(kPi * x2);
  };
  auto pbar = [gd](double x1, double x2, double t) {
    return (1.0 - t) / gd * std::sin(2.0 * kPi * x1) * std::sin(2.0 * kPi * x2);
  };
  auto ubar = [gd, bounds, pbar](double x1, double x2, double t) {
    return bounds.clamp(-gd * pbar(x1, x2, t));
  };

  // y_d = ybar + d(pbar)/dt + Lap(pbar); f = -ubar + d(ybar)/dt - Lap(ybar).
  p.yd = [gd, ybar](double x1, double x2, double t) {
    const double s2 = std::sin(2.0 * kPi * x1) * std::sin(2.0 * kPi * x2);
    const double dpdt = -s2 / gd;
    const double lap_p = -8.0 * kPi * kPi * (1.0 - t) * s2 / gd;
    return ybar(x1, x2, t) + dpdt + lap_p;
  };
  p.f = [ubar](double x1, double x2, double t) {
    const double s1 = std::sin(kPi * x1) * std::sin(kPi * x2);
    const double dydt = -s1;
    const double lap_y = -2.0 * kPi * kPi * (1.0 - t) * s1;
    return -ubar(x1, x2, t) + dydt - lap_y;
  };
  p.phi = [](double x1, double x2) {
    return std::sin(kPi * x1) * std::sin(kPi * x2);
  };
  p.u_exact = ubar;
  p.y_exact = ybar;
  return p;
}

ProblemSpec example2() {
  ProblemSpec p;
  p.name = "example2";
  p.gamma_d = 1e6;
  p.gamma_s = 0.0;
  p.nu = 1.0;
  p.a0 = 1.0;
  p.T = 1.0;
  p.bounds = BoxBounds{-30.0, 30.0};
  p.subdomain = Rect{0.0, 0.25, 0.0, 0.25};
  p.yd = [](double x1, double x2, double t) {
    return std::exp(t) * x1 * x2 * (1.0 - x1) * (1.0 - x2);
  };
  // f and phi stay null (zero source, zero initial datum).
  return p;
}

ProblemSpec example3(double gamma_s) {
  if (!(gamma_s > 0.0)) throw ConfigError("example3 requires gamma_s > 0");
  ProblemSpec p = example1();
  p.name = "example3";
  p.gamma_s = gamma_s;
  return p;
}

ProblemSpec example4(double gamma_s) {
  if (!(gamma_s > 0.0)) throw ConfigError("example4 requires gamma_s > 0");
  ProblemSpec p = example2();
  p.name = "example4";
  p.gamma_s = gamma_s;
  return p;
}

SpaceTimeField interpolate_field(const Grid& gr, const ScalarField3D& g) {
  SpaceTimeField out(gr.ns, gr.nt);
  for (int n = 1; n <= gr.nt; ++n) {
    const double t = n * gr.tau;
    for (int i = 0; i < gr.ns; ++i)
      out(i, n - 1) = g(gr.coords(i, 0), gr.coords(i, 1), t);
  }
  if (!out.allFinite()) throw DataError("field generator produced non-finite values");
  return out;
}

ControlField interpolate_control(const Grid& gr, const ScalarField3D& g) {
  ControlField out(gr.nc, gr.nt);
  for (int n = 1; n <= gr.nt; ++n) {
    const double t = n * gr.tau;
    for (int c = 0; c < gr.nc; ++c) {
      const int i = gr.control_nodes[c];
      out(c, n - 1) = g(gr.coords(i, 0), gr.coords(i, 1), t);
    }
  }
  if (!out.allFinite()) throw DataError("control generator produced non-finite values");
  return out;
}

Vec interpolate_initial(const Grid& gr, const ScalarField2D& g) {
  Vec out(gr.ns);
  for (int i = 0; i < gr.ns; ++i) out[i] = g(gr.coords(i, 0), gr.coords(i, 1));
  if (!out.allFinite()) throw DataError("initial datum produced non-finite values");
  return out;
}

Problem discretize(const ProblemSpec& spec, int m, int nt) {
  spec.validate();
  GridSpec gs;
  gs.m = m;
  gs.nt = nt;
  gs.T = spec.T;
  gs.subdomain = spec.subdomain;

  Problem prob;
  prob.disc = std::make_shared<const Discretization>(gs, spec.nu, spec.a0);
  prob.gamma_d = spec.gamma_d;
  prob.gamma_s = spec.gamma_s;
  prob.bounds = spec.bounds;
  prob.name = spec.name;

  const Discretization& d = *prob.disc;
  prob.yd = interpolate_field(d.grid(), spec.yd);
  if (spec.f) {
    prob.f = interpolate_field(d.grid(), spec.f);
    prob.has_f = true;
  } else {
    prob.f = SpaceTimeField::Zero(d.ns(), d.nt());
  }
  if (spec.phi) {
    prob.phi = interpolate_initial(d.grid(), spec.phi);
    prob.has_phi = true;
  } else {
    prob.phi = Vec::Zero(d.ns());
  }
  if (spec.u_exact) prob.u_star = interpolate_control(d.grid(), spec.u_exact);
  return prob;
}

StateTrajectory Problem::solve_state(const ControlField& v) const {
  return solve_forward(*disc, &v, f_ptr(), phi_ptr());
}

double objective_J(const Problem& prob, const ControlField& v) {
  const Discretization& d = *prob.disc;
  const StateTrajectory y = prob.solve_state(v);
  const SpaceTimeField r = y.rightCols(d.nt()) - prob.yd;
  const double track = d.dot_Y(r, r);
  const double cost = d.dot_U(v, v);
  return 0.5 * prob.gamma_d * track + 0.5 * cost;
}

double objective_full(const Problem& prob, const ControlField& z) {
  return objective_J(prob, z) + prob.gamma_s * prob.disc->norm_L1_U(z);
}

}  // namespace paropt
