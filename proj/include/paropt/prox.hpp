#pragma once

#include <algorithm>

#include "paropt/common.hpp"

namespace paropt {

struct BoxBounds {
  double a = -1.0;
  double b = 1.0;

  void validate() const {
    if (!(a <= b)) throw ConfigError("box bounds require a <= b");
  }
  double clamp(double v) const { return std::min(b, std::max(v, a)); }
};

// Pointwise clamp to [a, b].
ControlField project_box(const ControlField& v, const BoxBounds& bounds);

// sign(v) * max(|v| - kappa, 0), the prox of kappa*|.|.
ControlField soft_threshold(const ControlField& v, double kappa);

// Exact minimizer of gamma_s*|z| + I_[a,b](z) + beta/2*(z - (u - lambda/beta))^2
// at every node and level: threshold first, then clamp.
ControlField z_update(const ControlField& u, const ControlField& lambda,
                      double beta, double gamma_s, const BoxBounds& bounds);

}  // namespace paropt
