#pragma once

#include "chaosbench/system_spec.hpp"
#include "chaosbench/systems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace chaosbench {

namespace detail {

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (lower(a[i - 1]) == lower(b[j - 1]) ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace detail

using SystemFilter = std::function<bool(const SystemSpec&)>;

namespace filters {
inline bool hamiltonian(const SystemSpec& s) { return s.flags.hamiltonian; }
inline bool nonautonomous(const SystemSpec& s) { return s.flags.nonautonomous; }
inline bool autonomous(const SystemSpec& s) { return !s.flags.nonautonomous; }
inline bool dissipative(const SystemSpec& s) { return !s.flags.hamiltonian; }
inline bool chaotic(const SystemSpec& s) { return s.flags.chaotic; }
inline bool polynomial(const SystemSpec& s) { return s.flags.polynomial; }
}  // namespace filters

// Immutable name -> SystemSpec table. Safe for concurrent reads.
class Registry {
 public:
  explicit Registry(std::vector<SystemSpec> systems) {
    for (auto& s : systems) {
      require(!s.name.empty(), "system name must not be empty");
      require(s.dimension > 0, "system '" + s.name + "' must have positive dimension");
      require(static_cast<int>(s.default_initial_condition.size()) == s.dimension,
              "system '" + s.name + "' initial condition has wrong length");
      require(static_cast<bool>(s.rhs), "system '" + s.name + "' has no rhs");
      require(s.dt > 0.0 && s.dt < s.period, "system '" + s.name + "' requires 0 < dt < period");
      const std::string key = s.name;
      require(systems_.emplace(key, std::move(s)).second, "duplicate system '" + key + "'");
    }
  }

  static const Registry& builtin() {
    static const Registry registry(systems::builtin());
    return registry;
  }

  const SystemSpec& lookup(const std::string& name) const {
    auto it = systems_.find(name);
    if (it != systems_.end()) return it->second;
    throw UnknownSystemError(name, nearest(name, 3));
  }

  bool contains(const std::string& name) const { return systems_.count(name) > 0; }

  // Lexicographically sorted names satisfying `filter` (all when empty).
  std::vector<std::string> list(const SystemFilter& filter = {}) const {
    std::vector<std::string> out;
    for (const auto& [name, spec] : systems_)
      if (!filter || filter(spec)) out.push_back(name);
    return out;
  }

  std::size_t size() const { return systems_.size(); }

  std::vector<std::string> nearest(const std::string& name, std::size_t count) const {
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& [key, spec] : systems_) scored.emplace_back(detail::edit_distance(name, key), key);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < std::min(count, scored.size()); ++i) out.push_back(scored[i].second);
    return out;
  }

 private:
  std::map<std::string, SystemSpec> systems_;
};

inline const SystemSpec& lookup(const std::string& name) { return Registry::builtin().lookup(name); }

inline std::vector<std::string> list_systems(const SystemFilter& filter = {}) {
  return Registry::builtin().list(filter);
}

inline Vector rhs_eval(const SystemSpec& spec, const Vector& state, double t) {
  if (state.size() != spec.dimension)
    throw DimensionMismatchError("state has length " + std::to_string(state.size()) + ", system '" +
                                 spec.name + "' expects " + std::to_string(spec.dimension));
  if (!all_finite(as_span(state))) throw NonFiniteError("non-finite state passed to rhs of " + spec.name);
  const auto p = spec.parameter_values();
  Vector out(spec.dimension);
  spec.rhs(as_span(state), t, p, {out.data(), static_cast<std::size_t>(out.size())});
  if (!all_finite(as_span(out)))
    throw NonFiniteError("rhs of " + spec.name + " is not finite at the given state");
  return out;
}

// Analytic Jacobian when available, otherwise central differences with step
// fd_step scaled by max(1, |x_j|).
inline Matrix jacobian_eval(const SystemSpec& spec, const Vector& state, double t, double fd_step = 1e-6,
                            bool force_finite_difference = false) {
  const int d = spec.dimension;
  if (state.size() != d)
    throw DimensionMismatchError("state has length " + std::to_string(state.size()) + ", system '" +
                                 spec.name + "' expects " + std::to_string(d));
  if (!all_finite(as_span(state))) throw NonFiniteError("non-finite state passed to Jacobian of " + spec.name);
  const auto p = spec.parameter_values();
  Matrix jac(d, d);
  if (spec.analytic_jacobian && !force_finite_difference) {
    std::vector<double> buf(static_cast<std::size_t>(d * d));
    spec.analytic_jacobian(as_span(state), t, p, buf);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) jac(i, j) = buf[static_cast<std::size_t>(i * d + j)];
  } else {
    require(fd_step > 0.0, "fd_step must be positive");
    Vector xp = state, xm = state, fp(d), fm(d);
    for (int j = 0; j < d; ++j) {
      const double h = fd_step * std::max(1.0, std::abs(state[j]));
      xp[j] = state[j] + h;
      xm[j] = state[j] - h;
      spec.rhs(as_span(xp), t, p, {fp.data(), static_cast<std::size_t>(d)});
      spec.rhs(as_span(xm), t, p, {fm.data(), static_cast<std::size_t>(d)});
      jac.col(j) = (fp - fm) / (xp[j] - xm[j]);
      xp[j] = state[j];
      xm[j] = state[j];
    }
  }
  if (!jac.allFinite()) throw NonFiniteError("Jacobian of " + spec.name + " is not finite (diverged state?)");
  return jac;
}

}  // namespace chaosbench
