#pragma once

#include "chaosbench/core.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/parallel.hpp"
#include "chaosbench/registry.hpp"
#include "chaosbench/system_spec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace chaosbench {

// ---------------------------------------------------------------------------
// Lyapunov spectrum
// ---------------------------------------------------------------------------

struct LyapunovSpectrum {
  std::vector<double> exponents;  // descending, 1/time
  double n_periods_used = 0.0;    // mean over replicates, after warm-up
  int replicate_count = 0;
  double convergence_residual = 0.0;  // |smallest-magnitude exponent|
  std::vector<std::vector<double>> replicates;
  std::vector<double> replicate_residuals;

  double largest() const { return exponents.empty() ? 0.0 : exponents.front(); }
  double sum() const { return std::accumulate(exponents.begin(), exponents.end(), 0.0); }
};

struct LyapunovOptions {
  int replicates = 20;
  double points_per_period = 500.0;
  double max_periods = 1000.0;  // per-replicate step budget
  double warmup_periods = 5.0;  // tangent-bundle alignment, not averaged
  int settle_periods = 20;
  double tol = 1e-8;            // stop once the smallest-magnitude exponent is below this
  double residual_limit = 1e-3; // combined residual above this is a non-convergence error
  bool expect_zero_exponent = true;  // ignored (false) for nonautonomous systems
  int spacing_periods = 5;      // mean gap between replicate ics along the orbit
  std::uint64_t seed = 0;
  int jobs = 1;
};

namespace detail {

struct TangentRun {
  std::vector<double> exponents;
  double residual = 0.0;
  double periods = 0.0;
};

inline double smallest_magnitude(const std::vector<double>& v) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : v) best = std::min(best, std::abs(x));
  return best;
}

// Benettin-style: RK4 on (x, Q) with dQ/dt = J(x) Q, modified Gram-Schmidt
// after every step, exponents = accumulated log stretch / elapsed time.
inline TangentRun tangent_run(const SystemSpec& spec, const Vector& ic, const LyapunovOptions& opts) {
  const int d = spec.dimension;
  const auto du = static_cast<std::size_t>(d);
  const std::size_t n = du + du * du;
  const auto p = spec.parameter_values();
  const double interval = spec.period / opts.points_per_period;
  const double h = interval / static_cast<double>(substeps_for(spec, interval));
  const bool analytic = static_cast<bool>(spec.analytic_jacobian);

  std::vector<double> jac(du * du), fp(du), fm(du), xp(du), xm(du);
  auto jacobian = [&](std::span<const double> x, double t) {
    if (analytic) {
      spec.analytic_jacobian(x, t, p, jac);
      return;
    }
    for (std::size_t j = 0; j < du; ++j) {
      std::copy(x.begin(), x.end(), xp.begin());
      std::copy(x.begin(), x.end(), xm.begin());
      const double step = 1e-6 * std::max(1.0, std::abs(x[j]));
      xp[j] += step;
      xm[j] -= step;
      spec.rhs(xp, t, p, fp);
      spec.rhs(xm, t, p, fm);
      for (std::size_t i = 0; i < du; ++i) jac[i * du + j] = (fp[i] - fm[i]) / (2.0 * step);
    }
  };
  // z = [x, Q row-major], columns of Q are the tangent vectors.
  auto deriv = [&](const std::vector<double>& z, double t, std::vector<double>& dz) {
    std::span<const double> x(z.data(), du);
    spec.rhs(x, t, p, std::span<double>(dz.data(), du));
    jacobian(x, t);
    for (std::size_t i = 0; i < du; ++i)
      for (std::size_t k = 0; k < du; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < du; ++j) acc += jac[i * du + j] * z[du + j * du + k];
        dz[du + i * du + k] = acc;
      }
  };

  std::vector<double> z(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t i = 0; i < du; ++i) z[i] = ic[static_cast<Eigen::Index>(i)];
  for (std::size_t i = 0; i < du; ++i) z[du + i * du + i] = 1.0;

  std::vector<double> log_sum(du, 0.0), running(du, 0.0);
  const auto warmup_steps = static_cast<std::int64_t>(std::ceil(opts.warmup_periods * spec.period / h));
  const auto budget_steps = static_cast<std::int64_t>(std::ceil(opts.max_periods * spec.period / h));
  std::int64_t counted = 0;
  double t = 0.0;
  for (std::int64_t step = 0; step < warmup_steps + budget_steps; ++step) {
    deriv(z, t, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k1[i];
    deriv(tmp, t + 0.5 * h, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + 0.5 * h * k2[i];
    deriv(tmp, t + 0.5 * h, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = z[i] + h * k3[i];
    deriv(tmp, t + h, k4);
    for (std::size_t i = 0; i < n; ++i) z[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;
    check_state(spec, std::span<const double>(z.data(), du), t, 1e8);

    const bool record = step >= warmup_steps;
    for (std::size_t k = 0; k < du; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < du; ++i) dot += z[du + i * du + k] * z[du + i * du + j];
        for (std::size_t i = 0; i < du; ++i) z[du + i * du + k] -= dot * z[du + i * du + j];
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < du; ++i) norm += z[du + i * du + k] * z[du + i * du + k];
      norm = std::sqrt(norm);
      if (!(norm > 0.0) || !std::isfinite(norm))
        throw NonFiniteError("tangent bundle collapsed while computing Lyapunov exponents of " + spec.name);
      for (std::size_t i = 0; i < du; ++i) z[du + i * du + k] /= norm;
      if (record) log_sum[k] += std::log(norm);
    }
    if (!record) continue;
    ++counted;
    const double elapsed = static_cast<double>(counted) * h;
    for (std::size_t k = 0; k < du; ++k) running[k] = log_sum[k] / elapsed;
    if (opts.tol > 0.0 && smallest_magnitude(running) < opts.tol) break;
  }
  TangentRun out;
  out.exponents = running;
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  out.residual = smallest_magnitude(out.exponents);
  out.periods = static_cast<double>(counted) * h / spec.period;
  return out;
}

}  // namespace detail

// Replicate initial conditions: states visited by one settled trajectory from
// the default ic, separated by seeded gaps of 1 to 2*spacing_periods periods.
// Drawing from a single orbit keeps every replicate on the same attractor when
// the system has coexisting ones. Nonautonomous systems are re-settled from
// t = 0 since the forcing phase of the visited state is lost.
inline std::vector<Vector> replicate_initial_conditions(const SystemSpec& spec, int count, std::uint64_t seed,
                                                        int spacing_periods, int settle_periods, int jobs = 1) {
  require(count >= 1, "replicate count must be >= 1");
  require(spacing_periods >= 1, "replicate spacing must be >= 1 period");
  NormalSource source(seed);
  std::vector<Vector> ics;
  ics.reserve(static_cast<std::size_t>(count));
  Vector x = settle_on_attractor(spec, to_vector(spec.default_initial_condition), settle_periods);
  for (int r = 0; r < count; ++r) {
    const int gap = 1 + static_cast<int>(source.uniform() * 2.0 * spacing_periods);
    x = settle_on_attractor(spec, x, gap);
    ics.push_back(x);
  }
  if (!spec.flags.nonautonomous) return ics;
  return parallel_map(ics.size(), jobs, [&](std::size_t r) { return settle_on_attractor(spec, ics[r], settle_periods); });
}

inline LyapunovSpectrum lyapunov_spectrum(const SystemSpec& spec, const LyapunovOptions& opts = {}) {
  require(opts.replicates >= 1, "replicates must be >= 1");
  require(opts.max_periods > 0.0 && opts.points_per_period > 0.0, "Lyapunov budget must be positive");
  const auto ics = replicate_initial_conditions(spec, opts.replicates, opts.seed, opts.spacing_periods,
                                                opts.settle_periods, opts.jobs);
  const auto runs = parallel_map(ics.size(), opts.jobs,
                                 [&](std::size_t r) { return detail::tangent_run(spec, ics[r], opts); });

  // Inverse-residual weighting: replicates whose zero exponent is closest to
  // zero count most. Ordered reduction, so jobs does not affect the result.
  const auto d = static_cast<std::size_t>(spec.dimension);
  LyapunovSpectrum out;
  out.exponents.assign(d, 0.0);
  out.replicate_count = opts.replicates;
  double weight_sum = 0.0, periods = 0.0;
  for (const auto& run : runs) {
    const double w = 1.0 / (1e-12 + run.residual);
    for (std::size_t k = 0; k < d; ++k) out.exponents[k] += w * run.exponents[k];
    weight_sum += w;
    periods += run.periods;
    out.replicates.push_back(run.exponents);
    out.replicate_residuals.push_back(run.residual);
  }
  for (auto& e : out.exponents) e /= weight_sum;
  std::sort(out.exponents.begin(), out.exponents.end(), std::greater<>());
  out.n_periods_used = periods / static_cast<double>(runs.size());
  out.convergence_residual = detail::smallest_magnitude(out.exponents);
  const bool expect_zero = opts.expect_zero_exponent && !spec.flags.nonautonomous;
  if (expect_zero && out.convergence_residual > opts.residual_limit)
    throw NonConvergenceError("zero Lyapunov exponent of " + spec.name + " did not converge (residual " +
                              format_double(out.convergence_residual) + ")");
  return out;
}

// Kaplan-Yorke dimension j + S_j / |lambda_{j+1}|, S_j the largest
// nonnegative partial sum of the descending spectrum.
inline double kaplan_yorke(std::span<const double> exponents) {
  require(std::is_sorted(exponents.begin(), exponents.end(), std::greater<>()), "spectrum must be sorted descending");
  if (exponents.empty() || exponents[0] < 0.0) return 0.0;
  double partial = 0.0;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (partial + exponents[j] < 0.0) return static_cast<double>(j) + partial / std::abs(exponents[j]);
    partial += exponents[j];
  }
  return static_cast<double>(exponents.size());
}

inline double kaplan_yorke(const LyapunovSpectrum& s) { return kaplan_yorke(s.exponents); }

inline double pesin_bound(std::span<const double> exponents) {
  double sum = 0.0;
  for (double e : exponents)
    if (e > 0.0) sum += e;
  return sum;
}

inline double pesin_bound(const LyapunovSpectrum& s) { return pesin_bound(s.exponents); }

// ---------------------------------------------------------------------------
// Correlation dimension (Grassberger-Procaccia)
// ---------------------------------------------------------------------------

struct CorrelationDimensionOptions {
  int theiler_window = -1;  // -1 -> one period of samples (granularity)
  double low_quantile = 0.001;
  double high_quantile = 0.05;
  int n_radii = 12;
  std::size_t max_quantile_sample = 4'000'000;  // pairs kept for locating the fit band
  std::size_t min_pairs = 1000;
};

struct CorrelationSum {
  std::vector<double> radii;
  std::vector<double> fraction;  // C(r)
  double slope = 0.0;
};

// Points are the rows of `points`, optionally made of consecutive segments of
// `segment_length` rows (0 means one segment). Pairs closer than `theiler`
// samples within a segment are excluded; pairs across segments always count.
inline CorrelationSum correlation_sum(const Matrix& points, const CorrelationDimensionOptions& opts, int theiler,
                                      Eigen::Index segment_length = 0) {
  const Eigen::Index n = points.rows();
  require(n >= 500, "correlation dimension needs at least 500 points");
  require(opts.low_quantile > 0.0 && opts.low_quantile < opts.high_quantile && opts.high_quantile < 1.0,
          "fit quantiles must satisfy 0 < low < high < 1");
  require(theiler >= 0, "Theiler window must be >= 0");
  require(opts.n_radii >= 2, "need at least two radii");
  require(segment_length >= 0, "segment length must be >= 0");
  if (segment_length == 0) segment_length = n;
  const Matrix pt = points.transpose();  // column per point for contiguous access
  const Eigen::Index d = pt.rows();
  auto dist2 = [&](Eigen::Index i, Eigen::Index j) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double diff = pt(k, i) - pt(k, j);
      s += diff * diff;
    }
    return s;
  };
  // Partners of i are exactly j in [first_partner(i), n).
  auto first_partner = [&](Eigen::Index i) {
    const Eigen::Index seg_end = std::min(n, (i / segment_length + 1) * segment_length);
    return std::min(i + 1 + theiler, seg_end);
  };

  std::size_t admissible = 0;
  for (Eigen::Index i = 0; i < n; ++i) admissible += static_cast<std::size_t>(n - first_partner(i));
  if (admissible < opts.min_pairs)
    throw InsufficientDataError("Theiler window leaves only " + std::to_string(admissible) + " admissible pairs");

  // Pass 1: squared distances of every admissible pair, or of a fixed-seed
  // random sample of them, to place the fit band.
  std::vector<double> sample;
  if (admissible <= opts.max_quantile_sample) {
    sample.reserve(admissible);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = first_partner(i); j < n; ++j) sample.push_back(dist2(i, j));
  } else {
    sample.reserve(opts.max_quantile_sample);
    Rng rng(0x5eed);
    while (sample.size() < opts.max_quantile_sample) {
      auto i = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
      auto j = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
      if (i > j) std::swap(i, j);
      if (j >= first_partner(i)) sample.push_back(dist2(i, j));
    }
  }
  std::sort(sample.begin(), sample.end());
  // Geometric midpoint between neighbouring order statistics so no radius
  // coincides with an observed distance.
  auto radius_at = [&](double q) {
    const auto k = std::min(sample.size() - 2, static_cast<std::size_t>(q * static_cast<double>(sample.size() - 1)));
    const double a = std::max(sample[k], std::numeric_limits<double>::min());
    const double b = std::max(sample[k + 1], a);
    return std::sqrt(std::sqrt(a * b));
  };
  const double r_lo = radius_at(opts.low_quantile), r_hi = radius_at(opts.high_quantile);
  if (!(r_hi > r_lo) || !(r_lo > 0.0)) throw InsufficientDataError("degenerate distance distribution");

  CorrelationSum out;
  std::vector<double> r2(static_cast<std::size_t>(opts.n_radii));
  for (int k = 0; k < opts.n_radii; ++k) {
    const double r = r_lo * std::pow(r_hi / r_lo, static_cast<double>(k) / (opts.n_radii - 1));
    out.radii.push_back(r);
    r2[static_cast<std::size_t>(k)] = r * r;
  }

  // Pass 2: exact pair counts below each radius.
  std::vector<std::size_t> counts(r2.size() + 1, 0);
  const double r2_max = r2.back();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = first_partner(i); j < n; ++j) {
      const double s = dist2(i, j);
      if (s >= r2_max) continue;
      ++counts[static_cast<std::size_t>(std::upper_bound(r2.begin(), r2.end(), s) - r2.begin())];
    }
  std::size_t cumulative = 0;
  for (std::size_t k = 0; k < r2.size(); ++k) {
    cumulative += counts[k];
    out.fraction.push_back(static_cast<double>(cumulative) / static_cast<double>(admissible));
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < out.radii.size(); ++k) {
    if (out.fraction[k] <= 0.0) continue;
    const double lx = std::log(out.radii[k]), ly = std::log(out.fraction[k]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    ++m;
  }
  if (m < 2) throw InsufficientDataError("too few occupied radii for a correlation-dimension fit");
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

inline int default_theiler(const CorrelationDimensionOptions& opts, double granularity) {
  return opts.theiler_window >= 0 ? opts.theiler_window : std::max(0, static_cast<int>(std::lround(granularity)));
}

inline double correlation_dimension(const Trajectory& traj, const CorrelationDimensionOptions& opts = {}) {
  return correlation_sum(traj.states, opts, default_theiler(opts, traj.granularity)).slope;
}

inline double correlation_dimension(const Matrix& points, int theiler_window,
                                    const CorrelationDimensionOptions& opts = {}) {
  return correlation_sum(points, opts, theiler_window).slope;
}

// Pooled estimate over equal-length runs sampling the same attractor; the
// Theiler window applies within each run.
inline double correlation_dimension(const std::vector<Trajectory>& runs, const CorrelationDimensionOptions& opts = {}) {
  require(!runs.empty(), "need at least one trajectory");
  const Eigen::Index len = runs.front().size();
  Matrix all(len * static_cast<Eigen::Index>(runs.size()), runs.front().dimension());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    require(runs[r].size() == len && runs[r].dimension() == all.cols(), "pooled runs must share length and dimension");
    all.middleRows(static_cast<Eigen::Index>(r) * len, len) = runs[r].states;
  }
  return correlation_sum(all, opts, default_theiler(opts, runs.front().granularity), len).slope;
}

// ---------------------------------------------------------------------------
// Sample entropy and multiscale entropy
// ---------------------------------------------------------------------------

// -log(A/B): B pairs of length-m templates within Chebyshev distance r, A the
// same for length m+1; N-m templates for both lengths, no self-matches.
inline double sample_entropy(std::span<const double> x, int m, double r) {
  require(m >= 1, "template length must be >= 1");
  require(r >= 0.0, "tolerance must be nonnegative");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  require(n > m + 1, "series too short for sample entropy");
  const std::ptrdiff_t templates = n - m;
  std::uint64_t b = 0, a = 0;
  for (std::ptrdiff_t i = 0; i < templates; ++i) {
    for (std::ptrdiff_t j = i + 1; j < templates; ++j) {
      std::ptrdiff_t k = 0;
      while (k < m && std::abs(x[static_cast<std::size_t>(i + k)] - x[static_cast<std::size_t>(j + k)]) <= r) ++k;
      if (k < m) continue;
      ++b;
      if (std::abs(x[static_cast<std::size_t>(i + m)] - x[static_cast<std::size_t>(j + m)]) <= r) ++a;
    }
  }
  if (a == 0 || b == 0) throw UndefinedEntropyError("sample entropy undefined: no matching templates");
  return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

inline std::vector<double> coarse_grain(std::span<const double> x, int scale) {
  require(scale >= 1, "scale must be >= 1");
  const std::size_t n = x.size() / static_cast<std::size_t>(scale);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < scale; ++k) s += x[i * static_cast<std::size_t>(scale) + static_cast<std::size_t>(k)];
    out[i] = s / scale;
  }
  return out;
}

struct EntropyOptions {
  int m = 2;
  double r_factor = 0.2;
  std::vector<int> scales{1, 2, 3, 4, 5};
  std::size_t min_points = 100;
};

// Mean over scales of the sample entropy of one coordinate; the tolerance is
// r_factor times the standard deviation of the original series.
inline double multiscale_entropy_1d(std::span<const double> x, const EntropyOptions& opts = {}) {
  require(!opts.scales.empty(), "at least one scale required");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double r = opts.r_factor * std::sqrt(var / static_cast<double>(x.size()));
  double total = 0.0;
  for (int scale : opts.scales) {
    const auto coarse = coarse_grain(x, scale);
    if (coarse.size() < opts.min_points)
      throw ValidationError("coarse-grained series at scale " + std::to_string(scale) + " has fewer than " +
                            std::to_string(opts.min_points) + " points");
    total += sample_entropy(coarse, opts.m, r);
  }
  return total / static_cast<double>(opts.scales.size());
}

inline double median(std::vector<double> v) {
  require(!v.empty(), "median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Median across coordinates of the per-coordinate multiscale entropy.
inline double multiscale_entropy(const Trajectory& traj, const EntropyOptions& opts = {}, int jobs = 1) {
  auto per_coord = parallel_map(static_cast<std::size_t>(traj.dimension()), jobs, [&](std::size_t i) {
    const Vector col = traj.column(static_cast<int>(i));
    return multiscale_entropy_1d(as_span(col), opts);
  });
  return median(per_coord);
}

// ---------------------------------------------------------------------------
// Full annotation
// ---------------------------------------------------------------------------

struct AnnotateOptions {
  LyapunovOptions lyapunov{};
  int periods = 5;                  // trajectory length for dimension and entropy
  double points_per_period = 500.0;
  CorrelationDimensionOptions dimension{};
  EntropyOptions entropy{};
};

// Lyapunov spectrum (with derived quantities), correlation dimension pooled
// over the replicate trajectories, and multiscale entropy averaged over them.
inline SystemAnnotations annotate(const SystemSpec& spec, const LyapunovSpectrum& ls, const AnnotateOptions& opts = {}) {
  SystemAnnotations out;
  out.lyapunov_spectrum = ls.exponents;
  out.largest_lyapunov = ls.largest();
  out.kaplan_yorke_dimension = kaplan_yorke(ls);
  out.pesin_entropy = pesin_bound(ls);

  const auto& lo = opts.lyapunov;
  const auto ics = replicate_initial_conditions(spec, lo.replicates, lo.seed, lo.spacing_periods, lo.settle_periods, lo.jobs);
  struct Geometry {
    double dimension;
    double entropy;
  };
  const auto n_points = static_cast<Eigen::Index>(std::llround(opts.periods * opts.points_per_period));
  const auto runs = parallel_map(ics.size(), lo.jobs, [&](std::size_t r) {
    return make_trajectory(spec, ics[r], n_points, opts.points_per_period);
  });
  try {
    out.correlation_dimension = correlation_dimension(runs, opts.dimension);
  } catch (const NumericalError&) {
  }
  const auto ents = parallel_map(runs.size(), lo.jobs, [&](std::size_t r) {
    try {
      return multiscale_entropy(runs[r], opts.entropy);
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  });
  double sum = 0.0;
  int k = 0;
  for (double e : ents)
    if (std::isfinite(e)) sum += e, ++k;
  out.multiscale_entropy = k ? sum / k : std::numeric_limits<double>::quiet_NaN();
  return out;
}

inline SystemAnnotations annotate(const SystemSpec& spec, const AnnotateOptions& opts = {}) {
  return annotate(spec, lyapunov_spectrum(spec, opts.lyapunov), opts);
}

}  // namespace chaosbench
