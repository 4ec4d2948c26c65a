// Recomputes the registry's stored initial conditions and timescales.
//
//   chaosbench_calibrate [system ...]
//
// For each system: starting from a nominal period of 1, rerun select_timescales
// with the previous period until it moves by less than one frequency bin,
// halving dt after each pass until RK4 agrees with a half-step run, settle the stored initial condition onto the
// attractor, and print the values to paste into systems.hpp together with a
// short Lyapunov estimate as a sanity check.

#include "chaosbench/chaosbench.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace chaosbench;

// Largest dt = start / 2^k that (a) survives 20 periods from `ic` and (b)
// agrees with a half-step run to rtol of the state scale over `window` time
// units, started from ten states along the attractor.
double accurate_dt(const SystemSpec& spec, const Vector& ic, double start, double window, double rtol = 1e-6) {
  const Trajectory ref = make_trajectory(spec, ic, 201, 10.0);
  const double scale = std::max(1.0, ref.states.cwiseAbs().maxCoeff());
  double dt = start;
  for (int k = 0; k < 30; ++k, dt /= 2.0) {
    try {
      SystemSpec trial = spec;
      trial.dt = dt;
      settle_on_attractor(trial, ic, 20);
      const auto n = static_cast<Eigen::Index>(std::ceil(window / dt));
      double err = 0.0;
      for (Eigen::Index r = 0; r < ref.size(); r += 20) {
        const Vector a = integrate_fixed(spec, ref.row(r), dt, n, {}, ref.times[r]).final_state();
        const Vector b = integrate_fixed(spec, ref.row(r), dt / 2.0, 2 * n, {}, ref.times[r]).final_state();
        err = std::max(err, (a - b).cwiseAbs().maxCoeff());
      }
      if (err <= rtol * scale) return dt;
    } catch (const DivergenceError&) {
    }
  }
  throw NumericalError("no stable step found for " + spec.name);
}

int main(int argc, char** argv) {
  std::vector<std::string> names;
  for (int i = 1; i < argc; ++i) names.emplace_back(argv[i]);
  if (names.empty()) names = list_systems();
  for (const auto& name : names) {
    const auto t0 = std::chrono::steady_clock::now();
    SystemSpec spec = lookup(name);
    try {
      spec.period = 1.0;
      bool converged = false;
      for (int pass = 0; pass < 6 && !converged; ++pass) {
        const Timescales ts = select_timescales(spec);
        std::fprintf(stderr, "  pass %d: period %.6g dt %.6g (dominant %.6g, highest %.6g, %zu significant bins)\n", pass,
                     ts.period, ts.dt, ts.spectrum.dominant_frequency, ts.spectrum.highest_significant_frequency,
                     ts.spectrum.count_significant());
        converged = std::abs(1.0 / ts.period - 1.0 / spec.period) <= ts.spectrum.bin_width();
        spec.period = ts.period;
        const Vector start = settle_on_attractor(spec, to_vector(spec.default_initial_condition), 20);
        spec.dt = accurate_dt(spec, start, ts.dt, 1.0 / ts.spectrum.highest_significant_frequency);
      }
      if (!converged) std::fprintf(stderr, "  period of %s did not reach a fixed point\n", name.c_str());
      const Vector ic = settle_on_attractor(spec, to_vector(spec.default_initial_condition), 200);
      spec.default_initial_condition = to_std(ic);
      LyapunovOptions lo;
      lo.replicates = 2;
      lo.max_periods = 200;
      lo.residual_limit = std::numeric_limits<double>::infinity();
      const auto ls = lyapunov_spectrum(spec, lo);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("%s\n  s.default_initial_condition = {", name.c_str());
      for (std::size_t i = 0; i < ic.size(); ++i) std::printf("%s%s", i ? ", " : "", format_double(ic[i]).c_str());
      std::printf("};\n  s.dt = %s;\n  s.period = %s;\n", format_double(spec.dt).c_str(), format_double(spec.period).c_str());
      std::printf("  // max|x| %.3g  spectrum:", static_cast<double>(ic.cwiseAbs().maxCoeff()));
      for (double e : ls.exponents) std::printf(" %.4f", e);
      std::printf("  residual %.2e  (%.1fs)\n", ls.convergence_residual, secs);
    } catch (const Error& e) {
      std::printf("%s FAILED: %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
  }
}
