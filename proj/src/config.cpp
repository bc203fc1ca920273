#include "paropt/config.hpp"

#include <fstream>
#include <sstream>

namespace paropt {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::vector<double> to_double_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (problem != "example1" && problem != "example2" && problem != "example3" &&
      problem != "example4" && problem != "custom")
    throw ConfigError("unknown problem '" + problem + "'");
  if ((problem == "example3" || problem == "example4") && !(gamma_s > 0.0))
    throw ConfigError(problem + " requires gamma_s > 0");
  if (m < 2) throw ConfigError("m must be >= 2");
  if (nt < 1) throw ConfigError("nt must be >= 1");
  if (solver != "inadmm" && solver != "admmcg" && solver != "pgd")
    throw ConfigError("unknown solver '" + solver + "'");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
  params.validate();
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    if (key == "problem") {
      cfg.problem = val;
    } else if (key == "gamma_s") {
      cfg.gamma_s = to_double(key, val);
    } else if (key == "m") {
      cfg.m = to_int(key, val);
    } else if (key == "nt") {
      cfg.nt = to_int(key, val);
    } else if (key == "solver") {
      cfg.solver = val;
    } else if (key == "beta0") {
      cfg.params.beta0 = to_double(key, val);
    } else if (key == "beta1") {
      cfg.params.beta1 = to_double(key, val);
    } else if (key == "eta_base") {
      cfg.params.eta_base = to_double(key, val);
    } else if (key == "theta.kind") {
      if (val == "geometric") cfg.params.theta.kind = ThetaSchedule::Kind::Geometric;
      else if (val == "algebraic") cfg.params.theta.kind = ThetaSchedule::Kind::Algebraic;
      else if (val == "fixed") cfg.params.theta.kind = ThetaSchedule::Kind::Fixed;
      else throw ConfigError("theta.kind must be geometric, algebraic, or fixed");
    } else if (key == "theta.q") {
      cfg.params.theta.q = to_double(key, val);
    } else if (key == "theta.alpha") {
      cfg.params.theta.alpha = to_double(key, val);
    } else if (key == "theta.fixed") {
      cfg.params.theta.fixed = to_double(key, val);
    } else if (key == "theta0") {
      cfg.params.theta0 = to_double(key, val);
    } else if (key == "tol") {
      cfg.params.tol = to_double(key, val);
    } else if (key == "max_outer") {
      cfg.params.max_outer = to_int(key, val);
    } else if (key == "exact_threshold") {
      cfg.params.exact_threshold = to_double(key, val);
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else if (key == "snapshots") {
      cfg.snapshot_times = to_double_list(key, val);
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long>(to_int(key, val));
    } else if (key == "gamma_d") {
      cfg.gamma_d_override = to_double(key, val);
    } else if (key == "nu") {
      cfg.nu_override = to_double(key, val);
    } else if (key == "a0") {
      cfg.a0_override = to_double(key, val);
    } else if (key == "bounds.a") {
      cfg.bound_a_override = to_double(key, val);
    } else if (key == "bounds.b") {
      cfg.bound_b_override = to_double(key, val);
    } else if (key == "subdomain") {
      if (val == "entire") {
        cfg.subdomain_override = Rect::entire();
      } else {
        const auto parts = to_double_list(key, val);
        if (parts.size() != 4)
          throw ConfigError("subdomain needs 'entire' or x_lo,x_hi,y_lo,y_hi");
        cfg.subdomain_override = Rect{parts[0], parts[1], parts[2], parts[3]};
      }
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ProblemSpec resolve_problem(const RunConfig& cfg) {
  ProblemSpec spec;
  if (cfg.problem == "example1") {
    spec = example1();
  } else if (cfg.problem == "example2") {
    spec = example2();
  } else if (cfg.problem == "example3") {
    spec = example3(cfg.gamma_s);
  } else if (cfg.problem == "example4") {
    spec = example4(cfg.gamma_s);
  } else {
    // Zero-data problem: handy for smoke tests and custom coefficients.
    spec.name = "custom";
    spec.gamma_d = 1.0;
    spec.bounds = BoxBounds{-1.0, 1.0};
    spec.yd = [](double, double, double) { return 0.0; };
    if (cfg.gamma_s > 0.0) spec.gamma_s = cfg.gamma_s;
  }
  if (cfg.gamma_d_override) spec.gamma_d = *cfg.gamma_d_override;
  if (cfg.nu_override) spec.nu = *cfg.nu_override;
  if (cfg.a0_override) spec.a0 = *cfg.a0_override;
  if (cfg.bound_a_override) spec.bounds.a = *cfg.bound_a_override;
  if (cfg.bound_b_override) spec.bounds.b = *cfg.bound_b_override;
  if (cfg.subdomain_override) spec.subdomain = *cfg.subdomain_override;
  spec.validate();
  return spec;
}

}  // namespace paropt
