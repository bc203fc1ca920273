#include "paropt/prox.hpp"

namespace paropt {

ControlField project_box(const ControlField& v, const BoxBounds& bounds) {
  bounds.validate();
  return v.cwiseMax(bounds.a).cwiseMin(bounds.b);
}

ControlField soft_threshold(const ControlField& v, double kappa) {
  if (kappa < 0.0) throw ConfigError("soft_threshold: kappa must be >= 0");
  return v.array().sign() * (v.cwiseAbs().array() - kappa).max(0.0);
}

ControlField z_update(const ControlField& u, const ControlField& lambda,
                      double beta, double gamma_s, const BoxBounds& bounds) {
  if (!(beta > 0.0)) throw ConfigError("z_update: beta must be positive");
  if (gamma_s < 0.0) throw ConfigError("z_update: gamma_s must be >= 0");
  if (u.rows() != lambda.rows() || u.cols() != lambda.cols())
    throw DimensionError("z_update: u and lambda shapes differ");
  return project_box(soft_threshold(u - lambda / beta, gamma_s / beta), bounds);
}

}  // namespace paropt
