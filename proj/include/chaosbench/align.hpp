#pragma once

#include "chaosbench/core.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/parallel.hpp"
#include "chaosbench/system_spec.hpp"

#include <unsupported/Eigen/FFT>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace chaosbench {

struct PowerSpectrum {
  std::vector<double> frequencies;  // k * sample_rate / N, k = 0..N/2
  std::vector<double> power;        // sums to the (population) variance of the signal
};

inline constexpr std::size_t kMinSpectrumLength = 64;

// One-sided periodogram of the mean-removed signal, normalized so that the
// bins sum to the signal variance.
inline PowerSpectrum power_spectrum(std::span<const double> signal, double sample_rate) {
  require(signal.size() >= kMinSpectrumLength, "power spectrum needs at least 64 samples");
  require(sample_rate > 0.0, "sample rate must be positive");
  require(all_finite(signal), "signal must be finite");
  const std::size_t n = signal.size();
  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = signal[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, centered);

  PowerSpectrum out;
  const std::size_t half = n / 2;
  out.frequencies.resize(half + 1);
  out.power.resize(half + 1);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (std::size_t k = 0; k <= half; ++k) {
    const bool unpaired = k == 0 || (n % 2 == 0 && k == half);
    out.frequencies[k] = static_cast<double>(k) * sample_rate / static_cast<double>(n);
    out.power[k] = (unpaired ? 1.0 : 2.0) * std::norm(spec[k]) * norm;
  }
  out.power[0] = 0.0;
  return out;
}

inline void require_uniform(const std::vector<double>& times) {
  require(times.size() >= 2, "need at least two samples");
  const double dt = times[1] - times[0];
  require(dt > 0.0, "sample times must increase");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(times[i])) + 1e-9 * dt)
      throw ValidationError("signal is not uniformly sampled");
  }
}

inline PowerSpectrum power_spectrum(const Trajectory& traj, int coordinate = 0) {
  require_uniform(traj.times);
  const Vector col = traj.column(coordinate);
  return power_spectrum(as_span(col), 1.0 / traj.spacing());
}

// Random-phase surrogate: same Fourier amplitudes, uniformly random phases,
// DC and Nyquist bins untouched so the result is real with the same mean.
inline std::vector<double> phase_surrogate(std::span<const double> signal, std::uint64_t seed) {
  const std::size_t n = signal.size();
  require(n >= 2, "surrogate needs at least two samples");
  std::vector<double> input(signal.begin(), signal.end());
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, input);
  NormalSource rng(seed);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
    const double phi = two_pi * rng.uniform();
    spec[k] *= std::polar(1.0, phi);
    spec[n - k] = std::conj(spec[k]);
  }
  std::vector<double> out;
  fft.inv(out, spec);
  out.resize(n);
  return out;
}

inline std::vector<std::vector<double>> phase_surrogates(std::span<const double> signal, int n, std::uint64_t seed,
                                                         int jobs = 1) {
  require(n >= 1, "number of surrogates must be >= 1");
  return parallel_map(static_cast<std::size_t>(n), jobs,
                      [&](std::size_t i) { return phase_surrogate(signal, substream_seed(seed, i)); });
}

// Random permutation of the samples (iid null with the same marginal).
inline std::vector<double> shuffle_surrogate(std::span<const double> signal, std::uint64_t seed) {
  std::vector<double> out(signal.begin(), signal.end());
  Rng rng(seed);
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

struct SpectrumTestResult {
  std::vector<double> frequencies;
  std::vector<double> power;
  std::vector<double> threshold;
  std::vector<bool> significant;
  double dominant_frequency = std::numeric_limits<double>::quiet_NaN();
  double highest_significant_frequency = std::numeric_limits<double>::quiet_NaN();
  double quantile = 0.95;
  int n_surrogates = 0;

  bool any_significant() const { return std::isfinite(dominant_frequency); }
  double bin_width() const { return frequencies.size() > 1 ? frequencies[1] - frequencies[0] : 0.0; }
  std::size_t count_significant() const {
    return static_cast<std::size_t>(std::count(significant.begin(), significant.end(), true));
  }
};

namespace detail {

// Linear-interpolation sample quantile (R type 7) of `values`, reordered in place.
inline double quantile_inplace(std::vector<double>& values, double q) {
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
  const double a = values[lo];
  if (lo + 1 >= values.size()) return a;
  const double b = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1, values.end());
  return a + (pos - static_cast<double>(lo)) * (b - a);
}

}  // namespace detail

struct SignificanceOptions {
  int n_surrogates = 1000;
  double quantile = 0.95;
  std::uint64_t seed = 0;
  int jobs = 1;
};

namespace detail {

// Flags bins of `base` above the per-bin quantile of the surrogate powers.
inline SpectrumTestResult spectrum_test(const PowerSpectrum& base, const std::vector<std::vector<double>>& surrogate_power,
                                        const SignificanceOptions& opts) {
  const std::size_t bins = base.power.size();
  const std::size_t n_surr = surrogate_power.size();
  SpectrumTestResult out;
  out.frequencies = base.frequencies;
  out.power = base.power;
  out.threshold.assign(bins, 0.0);
  out.significant.assign(bins, false);
  out.quantile = opts.quantile;
  out.n_surrogates = opts.n_surrogates;
  std::vector<double> column(n_surr);
  double best_power = -1.0;
  for (std::size_t k = 1; k < bins; ++k) {
    for (std::size_t s = 0; s < n_surr; ++s) column[s] = surrogate_power[s][k];
    out.threshold[k] = quantile_inplace(column, opts.quantile);
    if (out.power[k] > out.threshold[k]) {
      out.significant[k] = true;
      out.highest_significant_frequency = out.frequencies[k];
      if (out.power[k] > best_power) {
        best_power = out.power[k];
        out.dominant_frequency = out.frequencies[k];
      }
    }
  }
  return out;
}

inline void check_significance_options(const SignificanceOptions& opts) {
  require(opts.n_surrogates >= 100, "significance testing needs at least 100 surrogates");
  require(opts.quantile > 0.0 && opts.quantile < 1.0, "quantile must lie in (0, 1)");
}

}  // namespace detail

// A nonzero frequency is significant when its power exceeds the per-frequency
// `quantile` of the surrogate ensemble. Random-phase surrogates reproduce the
// periodogram exactly, so the null ensemble is built from time-shuffled copies.
inline SpectrumTestResult significant_frequencies(std::span<const double> signal, double sample_rate,
                                                  const SignificanceOptions& opts = {}) {
  detail::check_significance_options(opts);
  const PowerSpectrum base = power_spectrum(signal, sample_rate);
  auto surrogate_power = parallel_map(static_cast<std::size_t>(opts.n_surrogates), opts.jobs, [&](std::size_t i) {
    const auto surr = shuffle_surrogate(signal, substream_seed(opts.seed, i));
    return power_spectrum(surr, sample_rate).power;
  });
  return detail::spectrum_test(base, surrogate_power, opts);
}

// Multichannel variant on the columns of `channels`: each column is scaled to
// unit variance and the periodograms are summed, so a tone carried by any
// coordinate counts. Constant columns are ignored. Surrogates shuffle every
// column independently. A single column gives the same flags as the
// univariate test.
inline SpectrumTestResult significant_frequencies(const Matrix& channels, double sample_rate,
                                                  const SignificanceOptions& opts = {}) {
  detail::check_significance_options(opts);
  const auto n = static_cast<std::size_t>(channels.rows());
  const auto n_cols = static_cast<std::size_t>(channels.cols());
  std::vector<std::vector<double>> cols;
  for (std::size_t c = 0; c < n_cols; ++c) {
    const Vector col = channels.col(static_cast<Eigen::Index>(c));
    const double sd = std::sqrt((col.array() - col.mean()).square().mean());
    if (!(sd > 0.0)) continue;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = col[static_cast<Eigen::Index>(i)] / sd;
    cols.push_back(std::move(v));
  }
  if (cols.empty()) throw NoSignificantFrequencyError("every channel is constant");
  auto summed = [&](auto&& make_channel) {
    PowerSpectrum total;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const PowerSpectrum ps = power_spectrum(make_channel(c), sample_rate);
      if (c == 0) {
        total = ps;
      } else {
        for (std::size_t k = 0; k < ps.power.size(); ++k) total.power[k] += ps.power[k];
      }
    }
    return total;
  };
  const PowerSpectrum base = summed([&](std::size_t c) { return std::span<const double>(cols[c]); });
  auto surrogate_power = parallel_map(static_cast<std::size_t>(opts.n_surrogates), opts.jobs, [&](std::size_t i) {
    return summed([&](std::size_t c) {
             return shuffle_surrogate(cols[c], substream_seed(opts.seed, i * n_cols + c));
           })
        .power;
  });
  return detail::spectrum_test(base, surrogate_power, opts);
}

inline nlohmann::ordered_json to_json(const SpectrumTestResult& r) {
  auto nan_to_null = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json j;
  j["frequencies"] = r.frequencies;
  j["power"] = r.power;
  j["threshold"] = r.threshold;
  j["significant"] = r.significant;
  j["dominant_frequency"] = nan_to_null(r.dominant_frequency);
  j["highest_significant_frequency"] = nan_to_null(r.highest_significant_frequency);
  j["quantile"] = r.quantile;
  j["n_surrogates"] = r.n_surrogates;
  return j;
}

struct AlignOptions {
  int oversample_factor = 16;
  int pilot_periods = 50;         // nominal periods in the pilot signal
  double pilot_granularity = 200; // samples per nominal period
  int settle_periods = 20;
  SignificanceOptions significance{};
};

struct Timescales {
  double dt = 0.0;
  double period = 0.0;
  SpectrumTestResult spectrum;
};

// Pilot: every coordinate of a settled trajectory from the default initial
// condition, pooled by the multichannel test. period = 1 / dominant,
// dt = 1 / (oversample * highest significant).
inline Timescales select_timescales(const SystemSpec& spec, const AlignOptions& opts = {}) {
  require(opts.oversample_factor >= 1, "oversample factor must be >= 1");
  require(opts.pilot_periods >= 50, "pilot signal must span at least 50 periods");
  const Vector ic = settle_on_attractor(spec, to_vector(spec.default_initial_condition), opts.settle_periods);
  const auto n = static_cast<Eigen::Index>(std::llround(opts.pilot_periods * opts.pilot_granularity));
  const Trajectory pilot = make_trajectory(spec, ic, n, opts.pilot_granularity);
  Timescales out;
  out.spectrum = significant_frequencies(pilot.states, 1.0 / pilot.spacing(), opts.significance);
  if (!out.spectrum.any_significant())
    throw NoSignificantFrequencyError("no significant frequency found for " + spec.name);
  out.period = 1.0 / out.spectrum.dominant_frequency;
  out.dt = 1.0 / (static_cast<double>(opts.oversample_factor) * out.spectrum.highest_significant_frequency);
  return out;
}

// Copy of `spec` with dt and period replaced by the selected timescales.
inline SystemSpec align_system(const SystemSpec& spec, const AlignOptions& opts = {}) {
  const Timescales ts = select_timescales(spec, opts);
  SystemSpec out = spec;
  out.dt = ts.dt;
  out.period = ts.period;
  return out;
}

}  // namespace chaosbench
