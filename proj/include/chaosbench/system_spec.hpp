#pragma once

#include "chaosbench/core.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chaosbench {

// Right-hand side dx/dt = f(x, t; p). `p` holds parameter values in the order
// of SystemSpec::parameters.
using RhsFn = std::function<void(std::span<const double> x, double t,
                                 std::span<const double> p, std::span<double> dxdt)>;

// Row-major d*d Jacobian df_i/dx_j.
using JacobianFn = std::function<void(std::span<const double> x, double t,
                                      std::span<const double> p, std::span<double> jac)>;

// Conserved quantity for Hamiltonian systems.
using InvariantFn = std::function<double(std::span<const double> x, std::span<const double> p)>;

struct Parameter {
  std::string name;
  double value = 0.0;
};

struct SystemFlags {
  bool hamiltonian = false;
  bool nonautonomous = false;
  bool bounded = true;
  bool chaotic = true;
  bool polynomial = true;  // rhs is a polynomial in the state (exact library fit possible)
};

struct SystemSpec {
  std::string name;
  int dimension = 0;
  std::vector<Parameter> parameters;
  RhsFn rhs;
  JacobianFn analytic_jacobian;  // empty for user systems without one
  InvariantFn energy;            // set only for Hamiltonian systems
  std::vector<double> default_initial_condition;
  double dt = 0.0;
  double period = 0.0;
  SystemFlags flags;
  std::vector<int> unbounded_indices;
  double state_bound = 1e3;  // max |coordinate| expected on the attractor
  std::string citation;
  std::string description;

  std::vector<double> parameter_values() const {
    std::vector<double> out;
    out.reserve(parameters.size());
    for (const auto& p : parameters) out.push_back(p.value);
    return out;
  }

  double parameter(const std::string& key) const {
    for (const auto& p : parameters)
      if (p.name == key) return p.value;
    throw ValidationError("system '" + name + "' has no parameter '" + key + "'");
  }

  void set_parameter(const std::string& key, double value) {
    for (auto& p : parameters)
      if (p.name == key) {
        p.value = value;
        return;
      }
    throw ValidationError("system '" + name + "' has no parameter '" + key + "'");
  }
};

// Annotations recorded per system; NaN marks a quantity that could not be computed.
struct SystemAnnotations {
  std::vector<double> lyapunov_spectrum;
  double largest_lyapunov = std::numeric_limits<double>::quiet_NaN();
  double correlation_dimension = std::numeric_limits<double>::quiet_NaN();
  double kaplan_yorke_dimension = std::numeric_limits<double>::quiet_NaN();
  double multiscale_entropy = std::numeric_limits<double>::quiet_NaN();
  double pesin_entropy = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace chaosbench
