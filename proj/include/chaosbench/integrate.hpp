#pragma once

#include "chaosbench/core.hpp"
#include "chaosbench/system_spec.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace chaosbench {

struct Provenance {
  std::string system;
  std::vector<double> initial_condition;
  std::uint64_t seed = 0;
  double noise_amplitude = 0.0;
  std::string integrator;
};

// Uniformly sampled multivariate time series; states is T x d.
struct Trajectory {
  std::vector<double> times;
  Matrix states;
  double granularity = 0.0;  // points per dominant period
  Provenance provenance;

  Eigen::Index size() const { return states.rows(); }
  int dimension() const { return static_cast<int>(states.cols()); }
  Vector column(int i) const { return states.col(i); }
  Vector row(Eigen::Index r) const { return states.row(r).transpose(); }
  Vector final_state() const { return row(size() - 1); }
  double spacing() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }

  // Rows [begin, begin + count).
  Trajectory slice(Eigen::Index begin, Eigen::Index count) const {
    Trajectory out;
    out.times.assign(times.begin() + begin, times.begin() + begin + count);
    out.states = states.middleRows(begin, count);
    out.granularity = granularity;
    out.provenance = provenance;
    return out;
  }

  // Keep only the listed coordinates.
  Trajectory view(const std::vector<int>& coordinates) const {
    Trajectory out = *this;
    out.states.resize(size(), static_cast<Eigen::Index>(coordinates.size()));
    for (std::size_t k = 0; k < coordinates.size(); ++k)
      out.states.col(static_cast<Eigen::Index>(k)) = states.col(coordinates[k]);
    return out;
  }
};

struct IntegratorOptions {
  double divergence_bound = 1e8;
};

namespace detail {

// Explicit RK4 on a raw buffer. Holds the scratch space for one system.
class Rk4 {
 public:
  Rk4(const SystemSpec& spec)
      : spec_(spec),
        p_(spec.parameter_values()),
        d_(static_cast<std::size_t>(spec.dimension)),
        k1_(d_), k2_(d_), k3_(d_), k4_(d_), tmp_(d_) {}

  void eval(std::span<const double> x, double t, std::span<double> out) const { spec_.rhs(x, t, p_, out); }

  // Writes the RK4 increment (not the new state) for one step of size h.
  void increment(std::span<const double> x, double t, double h, std::span<double> inc) {
    eval(x, t, k1_);
    for (std::size_t i = 0; i < d_; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
    eval(tmp_, t + 0.5 * h, k2_);
    for (std::size_t i = 0; i < d_; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
    eval(tmp_, t + 0.5 * h, k3_);
    for (std::size_t i = 0; i < d_; ++i) tmp_[i] = x[i] + h * k3_[i];
    eval(tmp_, t + h, k4_);
    for (std::size_t i = 0; i < d_; ++i) inc[i] = (h / 6.0) * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  const SystemSpec& spec_;
  std::vector<double> p_;
  std::size_t d_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

inline void check_state(const SystemSpec& spec, std::span<const double> x, double t, double bound) {
  for (double v : x) {
    if (!std::isfinite(v) || std::abs(v) > bound) {
      throw DivergenceError("integration of " + spec.name + " diverged at t=" + format_double(t) +
                            " (|x| exceeded " + format_double(bound) + ")");
    }
  }
}

inline void check_ic(const SystemSpec& spec, const Vector& ic) {
  if (ic.size() != spec.dimension)
    throw DimensionMismatchError("initial condition has length " + std::to_string(ic.size()) +
                                 ", system '" + spec.name + "' expects " + std::to_string(spec.dimension));
  if (!ic.allFinite()) throw ValidationError("initial condition must be finite");
}

// RK4 with optional additive noise sigma_i dW_i per step; records every
// `stride` steps (including the initial state), n_records rows in total.
inline Trajectory integrate_rk4(const SystemSpec& spec, const Vector& ic, double t0, double h,
                                Eigen::Index n_records, Eigen::Index stride, const Vector* noise_sigma,
                                std::uint64_t seed, const IntegratorOptions& opts) {
  check_ic(spec, ic);
  require(h > 0.0 && std::isfinite(h), "integration step must be positive");
  require(n_records >= 1 && stride >= 1, "record count and stride must be positive");
  const int d = spec.dimension;
  const auto du = static_cast<std::size_t>(d);
  Rk4 rk(spec);
  std::vector<double> x(ic.data(), ic.data() + d), inc(du);
  NormalSource normal(seed);
  const bool noisy = noise_sigma != nullptr && (noise_sigma->array() != 0.0).any();
  const double sqrt_h = std::sqrt(h);

  Trajectory traj;
  traj.times.resize(static_cast<std::size_t>(n_records));
  traj.states.resize(n_records, d);
  traj.times[0] = t0;
  traj.states.row(0) = ic.transpose();
  std::int64_t step = 0;
  for (Eigen::Index r = 1; r < n_records; ++r) {
    for (Eigen::Index s = 0; s < stride; ++s, ++step) {
      const double t = t0 + static_cast<double>(step) * h;
      rk.increment(x, t, h, inc);
      for (std::size_t i = 0; i < du; ++i) x[i] += inc[i];
      if (noisy)
        for (std::size_t i = 0; i < du; ++i) x[i] += (*noise_sigma)[static_cast<Eigen::Index>(i)] * sqrt_h * normal();
      check_state(spec, x, t + h, opts.divergence_bound);
    }
    traj.times[static_cast<std::size_t>(r)] = t0 + static_cast<double>(step) * h;
    for (int i = 0; i < d; ++i) traj.states(r, i) = x[static_cast<std::size_t>(i)];
  }
  traj.granularity = spec.period / (h * static_cast<double>(stride));
  traj.provenance.system = spec.name;
  traj.provenance.initial_condition = to_std(ic);
  traj.provenance.seed = noisy ? seed : 0;
  traj.provenance.integrator = noisy ? "rk4-additive-noise" : "rk4";
  return traj;
}

}  // namespace detail

// Classic fourth-order Runge-Kutta, n_steps + 1 rows starting at ic.
inline Trajectory integrate_fixed(const SystemSpec& spec, const Vector& ic, double dt, Eigen::Index n_steps,
                                  const IntegratorOptions& opts = {}, double t0 = 0.0) {
  require(n_steps >= 1, "n_steps must be >= 1");
  return detail::integrate_rk4(spec, ic, t0, dt, n_steps + 1, 1, nullptr, 0, opts);
}

// Integer number of RK4 substeps per sample so that the sample interval is
// exactly period / granularity and the step never exceeds spec.dt.
inline Eigen::Index substeps_for(const SystemSpec& spec, double sample_interval) {
  return std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(sample_interval / spec.dt - 1e-9)));
}

// n_points samples at `granularity` points per period, integrated at or below spec.dt.
inline Trajectory make_trajectory(const SystemSpec& spec, const Vector& ic, Eigen::Index n_points,
                                  double granularity, const IntegratorOptions& opts = {}, double t0 = 0.0) {
  require(granularity > 0.0, "granularity must be positive");
  const double interval = spec.period / granularity;
  const Eigen::Index m = substeps_for(spec, interval);
  Trajectory traj = detail::integrate_rk4(spec, ic, t0, interval / static_cast<double>(m), n_points, m, nullptr, 0, opts);
  traj.granularity = granularity;
  return traj;
}

// RK4 drift plus additive Wiener increments sigma_i dW_i: strong order 1.0 for
// additive noise. `noise_sigma` holds absolute per-coordinate amplitudes.
inline Trajectory integrate_stochastic_scaled(const SystemSpec& spec, const Vector& ic, double dt,
                                              Eigen::Index n_steps, const Vector& noise_sigma,
                                              std::uint64_t seed, Eigen::Index stride = 1,
                                              const IntegratorOptions& opts = {}, double t0 = 0.0) {
  require(noise_sigma.size() == spec.dimension, "noise scale must have one entry per coordinate");
  require((noise_sigma.array() >= 0.0).all(), "noise scale must be nonnegative");
  require(n_steps >= 1, "n_steps must be >= 1");
  require(n_steps % stride == 0, "n_steps must be a multiple of stride");
  return detail::integrate_rk4(spec, ic, t0, dt, n_steps / stride + 1, stride, &noise_sigma, seed, opts);
}

inline Vector coordinate_std(const Matrix& states) {
  const Eigen::RowVectorXd mean = states.colwise().mean();
  return ((states.rowwise() - mean).array().square().colwise().sum() / static_cast<double>(states.rows()))
      .sqrt()
      .transpose();
}

// Noise amplitude is a fraction of each coordinate's standard deviation along
// a noise-free reference run from the same ic, dt and length.
inline Trajectory integrate_stochastic(const SystemSpec& spec, const Vector& ic, double dt,
                                       Eigen::Index n_steps, double noise_amplitude, std::uint64_t seed,
                                       const IntegratorOptions& opts = {}) {
  require(noise_amplitude >= 0.0, "noise amplitude must be nonnegative");
  const Trajectory reference = integrate_fixed(spec, ic, dt, n_steps, opts);
  if (noise_amplitude == 0.0) {
    Trajectory out = reference;
    out.provenance.seed = seed;
    return out;
  }
  const Vector sigma = noise_amplitude * coordinate_std(reference.states);
  Trajectory out = integrate_stochastic_scaled(spec, ic, dt, n_steps, sigma, seed, 1, opts);
  out.provenance.noise_amplitude = noise_amplitude;
  return out;
}

// Final state after discarding n_transient_periods of dynamics.
inline Vector settle_on_attractor(const SystemSpec& spec, const Vector& ic, int n_transient_periods = 100,
                                  const IntegratorOptions& opts = {}) {
  require(n_transient_periods >= 1, "n_transient_periods must be >= 1");
  detail::check_ic(spec, ic);
  const auto n_steps = static_cast<Eigen::Index>(std::ceil(n_transient_periods * spec.period / spec.dt));
  detail::Rk4 rk(spec);
  const auto d = static_cast<std::size_t>(spec.dimension);
  std::vector<double> x(ic.data(), ic.data() + d), inc(d);
  for (Eigen::Index s = 0; s < n_steps; ++s) {
    const double t = static_cast<double>(s) * spec.dt;
    rk.increment(x, t, spec.dt, inc);
    for (std::size_t i = 0; i < d; ++i) x[i] += inc[i];
    detail::check_state(spec, x, t + spec.dt, opts.divergence_bound);
  }
  return to_vector(x);
}

// Integer-stride decimation to the nearest achievable granularity.
inline Eigen::Index resample_stride(double source_granularity, double target_granularity) {
  require(target_granularity > 0.0, "target granularity must be positive");
  if (target_granularity > source_granularity * (1.0 + 1e-9))
    throw ValidationError("resample cannot upsample (source " + format_double(source_granularity) +
                          " pts/period, target " + format_double(target_granularity) + ")");
  return std::max<Eigen::Index>(1, std::llround(source_granularity / target_granularity));
}

inline Trajectory resample(const Trajectory& traj, double target_granularity, double period) {
  require(traj.size() >= 2, "resample needs at least two points");
  require(period > 0.0, "period must be positive");
  const double source = period / traj.spacing();
  const Eigen::Index stride = resample_stride(source, target_granularity);
  const Eigen::Index n = (traj.size() - 1) / stride + 1;
  Trajectory out;
  out.times.resize(static_cast<std::size_t>(n));
  out.states.resize(n, traj.dimension());
  for (Eigen::Index r = 0; r < n; ++r) {
    out.times[static_cast<std::size_t>(r)] = traj.times[static_cast<std::size_t>(r * stride)];
    out.states.row(r) = traj.states.row(r * stride);
  }
  out.granularity = source / static_cast<double>(stride);
  out.provenance = traj.provenance;
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) with dense output
// ---------------------------------------------------------------------------

struct AdaptiveOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double output_dt = 0.0;  // 0 -> spec.dt
  double initial_step = 0.0;
  double divergence_bound = 1e8;
  std::int64_t max_steps = 50'000'000;
};

inline Trajectory integrate_adaptive(const SystemSpec& spec, const Vector& ic, double t_start, double t_end,
                                     const AdaptiveOptions& opts = {}) {
  detail::check_ic(spec, ic);
  require(t_end > t_start, "t_span must be increasing");
  require(opts.rtol > 0.0 && opts.atol > 0.0, "tolerances must be positive");
  const double out_dt = opts.output_dt > 0.0 ? opts.output_dt : spec.dt;
  const int d = spec.dimension;
  const auto du = static_cast<std::size_t>(d);
  const auto p = spec.parameter_values();

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  std::vector<double> y(ic.data(), ic.data() + d), y1(du), tmp(du);
  std::vector<double> k1(du), k2(du), k3(du), k4(du), k5(du), k6(du), k7(du);
  std::vector<double> r1(du), r2(du), r3(du), r4(du), r5(du);
  auto f = [&](std::span<const double> x, double t, std::vector<double>& out) { spec.rhs(x, t, p, out); };

  const auto n_out = static_cast<Eigen::Index>(std::floor((t_end - t_start) / out_dt + 1e-9)) + 1;
  Trajectory traj;
  traj.times.resize(static_cast<std::size_t>(n_out));
  traj.states.resize(n_out, d);
  for (Eigen::Index r = 0; r < n_out; ++r) traj.times[static_cast<std::size_t>(r)] = t_start + static_cast<double>(r) * out_dt;
  traj.states.row(0) = ic.transpose();
  Eigen::Index next_out = 1;

  double t = t_start;
  f(y, t, k1);
  double h = opts.initial_step > 0.0 ? opts.initial_step : std::min(spec.dt, t_end - t_start);
  std::int64_t steps = 0;
  while (next_out < n_out) {
    if (++steps > opts.max_steps) throw StepSizeUnderflowError("adaptive integration exceeded max_steps for " + spec.name);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw StepSizeUnderflowError("step size underflow at t=" + format_double(t) + " for " + spec.name);
    h = std::min(h, t_end - t + 1e-12 * std::max(1.0, std::abs(t_end)));

    for (std::size_t i = 0; i < du; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(tmp, t + c2 * h, k2);
    for (std::size_t i = 0; i < du; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(tmp, t + c3 * h, k3);
    for (std::size_t i = 0; i < du; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(tmp, t + c4 * h, k4);
    for (std::size_t i = 0; i < du; ++i) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(tmp, t + c5 * h, k5);
    for (std::size_t i = 0; i < du; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(tmp, t + h, k6);
    for (std::size_t i = 0; i < du; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    f(y1, t + h, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < du; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err += (e / scale) * (e / scale);
    }
    err = std::sqrt(err / static_cast<double>(du));
    if (!std::isfinite(err)) {
      h *= 0.2;
      continue;
    }

    if (err <= 1.0) {
      for (std::size_t i = 0; i < du; ++i) {
        r1[i] = y[i];
        r2[i] = y1[i] - y[i];
        r3[i] = h * k1[i] - r2[i];
        r4[i] = r2[i] - h * k7[i] - r3[i];
        r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      const double t_new = t + h;
      while (next_out < n_out && traj.times[static_cast<std::size_t>(next_out)] <= t_new + 1e-12 * std::abs(t_new)) {
        const double theta = (traj.times[static_cast<std::size_t>(next_out)] - t) / h;
        const double om = 1.0 - theta;
        for (int i = 0; i < d; ++i) {
          const auto iu = static_cast<std::size_t>(i);
          traj.states(next_out, i) = r1[iu] + theta * (r2[iu] + om * (r3[iu] + theta * (r4[iu] + om * r5[iu])));
        }
        ++next_out;
      }
      y.swap(y1);
      k1.swap(k7);
      t = t_new;
      detail::check_state(spec, y, t, opts.divergence_bound);
    }
    const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= err <= 1.0 ? fac : std::min(1.0, fac);
  }
  traj.granularity = spec.period / out_dt;
  traj.provenance.system = spec.name;
  traj.provenance.initial_condition = to_std(ic);
  traj.provenance.integrator = "dopri5";
  return traj;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "t";
  for (int i = 0; i < traj.dimension(); ++i) out += ",x" + std::to_string(i);
  out += '\n';
  for (Eigen::Index r = 0; r < traj.size(); ++r) {
    out += format_double(traj.times[static_cast<std::size_t>(r)]);
    for (int i = 0; i < traj.dimension(); ++i) {
      out += ',';
      out += format_double(traj.states(r, i));
    }
    out += '\n';
  }
  return out;
}

inline Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t", 0) != 0) throw IoError("trajectory CSV lacks a 't,x0,...' header");
  const int d = static_cast<int>(std::count(line.begin(), line.end(), ','));
  if (d < 1) throw IoError("trajectory CSV has no state columns");
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    int col = 0;
    while (std::getline(row, cell, ',')) {
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc()) throw IoError("malformed number '" + cell + "' in trajectory CSV");
      (col == 0 ? times : values).push_back(v);
      ++col;
    }
    if (col != d + 1) throw IoError("ragged row in trajectory CSV");
  }
  Trajectory traj;
  traj.times = std::move(times);
  traj.states.resize(static_cast<Eigen::Index>(traj.times.size()), d);
  for (Eigen::Index r = 0; r < traj.states.rows(); ++r)
    for (int i = 0; i < d; ++i) traj.states(r, i) = values[static_cast<std::size_t>(r * d + i)];
  return traj;
}

inline nlohmann::ordered_json trajectory_to_json(const Trajectory& traj) {
  nlohmann::ordered_json j;
  j["provenance"] = {{"system", traj.provenance.system},
                     {"initial_condition", traj.provenance.initial_condition},
                     {"seed", traj.provenance.seed},
                     {"noise_amplitude", traj.provenance.noise_amplitude},
                     {"integrator", traj.provenance.integrator}};
  j["granularity"] = traj.granularity;
  j["times"] = traj.times;
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < traj.size(); ++r) rows.push_back(to_std(traj.row(r)));
  j["states"] = std::move(rows);
  return j;
}

inline Trajectory trajectory_from_json(const nlohmann::ordered_json& j) {
  Trajectory traj;
  const auto& prov = j.at("provenance");
  traj.provenance.system = prov.at("system").get<std::string>();
  traj.provenance.initial_condition = prov.at("initial_condition").get<std::vector<double>>();
  traj.provenance.seed = prov.at("seed").get<std::uint64_t>();
  traj.provenance.noise_amplitude = prov.at("noise_amplitude").get<double>();
  traj.provenance.integrator = prov.at("integrator").get<std::string>();
  traj.granularity = j.at("granularity").get<double>();
  traj.times = j.at("times").get<std::vector<double>>();
  const auto& rows = j.at("states");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = n > 0 ? static_cast<Eigen::Index>(rows[0].size()) : 0;
  traj.states.resize(n, d);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index i = 0; i < d; ++i) traj.states(r, i) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)].get<double>();
  return traj;
}

}  // namespace chaosbench
