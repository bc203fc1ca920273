#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paropt/admm.hpp"

namespace paropt {

// Flat key=value run configuration; see README for the key reference.
struct RunConfig {
  std::string problem = "example1";
  double gamma_s = -1.0;  // required for example3/example4
  int m = 64;
  int nt = 64;
  std::string solver = "inadmm";  // inadmm | admmcg | pgd
  AdmmParams params;
  std::string out_dir = "out";
  std::vector<double> snapshot_times;
  unsigned long seed = 0;  // reserved; solvers are deterministic

  // Optional coefficient/bounds overrides on the selected problem.
  std::optional<double> gamma_d_override;
  std::optional<double> nu_override;
  std::optional<double> a0_override;
  std::optional<double> bound_a_override;
  std::optional<double> bound_b_override;
  std::optional<Rect> subdomain_override;

  void validate() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Resolves the problem selector plus overrides into an analytic spec.
ProblemSpec resolve_problem(const RunConfig& cfg);

}  // namespace paropt
