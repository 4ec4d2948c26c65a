#pragma once

#include "chaosbench/characterize.hpp"
#include "chaosbench/core.hpp"
#include "chaosbench/forecast.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/metrics.hpp"
#include "chaosbench/parallel.hpp"

#include <chrono>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace chaosbench {

enum class SamplingMode { full, random_subset, importance_weighted };

inline std::string to_string(SamplingMode m) {
  switch (m) {
    case SamplingMode::full: return "full";
    case SamplingMode::random_subset: return "random";
    case SamplingMode::importance_weighted: return "weighted";
  }
  return "unknown";
}

inline SamplingMode sampling_mode_from_string(const std::string& s) {
  if (s == "full") return SamplingMode::full;
  if (s == "random" || s == "random_subset") return SamplingMode::random_subset;
  if (s == "weighted" || s == "importance_weighted") return SamplingMode::importance_weighted;
  throw ValidationError("unknown sampling mode '" + s + "' (expected full, random or weighted)");
}

struct ImportancePlan {
  int tau = 150;     // steps per resampled trajectory
  int b = 30;        // epochs per meta-epoch
  int nu = 5;        // meta-epochs
  int B = 400;       // epochs of the full baseline
  double perturbation_amplitude = 0.05;  // fraction of per-coordinate attractor std
  SamplingMode mode = SamplingMode::importance_weighted;
  std::uint64_t seed = 0;
  int anchors = 0;           // per meta-epoch; 0 -> training length / tau
  int backtest_horizon = 10;
  double granularity = 100.0;
  int train_periods = 10;
  int test_periods = 2;
  int jobs = 1;

  void validate() const {
    require(tau >= 1, "tau must be >= 1");
    require(b >= 1 && B >= 1, "epoch counts must be >= 1");
    require(nu >= 1, "nu must be >= 1");
    require(static_cast<long long>(nu) * b < B, "plan violates nu * b < B");
    require(perturbation_amplitude > 0.0, "perturbation amplitude must be positive");
    require(anchors >= 0, "anchor count must be nonnegative");
    require(backtest_horizon >= 1, "backtest horizon must be >= 1");
    require(granularity > 0.0 && train_periods >= 1 && test_periods >= 1, "invalid trajectory lengths");
  }
};

// k indices drawn with replacement; probability proportional to error when
// `weighted`, uniform otherwise. Both modes consume the same uniform stream.
inline std::vector<std::size_t> sample_weighted_points(std::span<const double> errors, std::size_t k, bool weighted,
                                                       std::uint64_t seed) {
  require(!errors.empty(), "error vector must be nonempty");
  double emax = 0.0;
  for (double e : errors) {
    require(std::isfinite(e) && e >= 0.0, "errors must be finite and nonnegative");
    emax = std::max(emax, e);
  }
  if (weighted && emax == 0.0) {
    std::clog << "sample_weighted_points: all errors are zero, sampling uniformly\n";
    weighted = false;
  }
  std::vector<double> cumulative(errors.size());
  double total = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    total += weighted ? errors[i] / emax : 1.0;
    cumulative[i] = total;
  }
  NormalSource rng(seed);
  std::vector<std::size_t> out(k);
  for (auto& idx : out) {
    const double u = rng.uniform() * total;
    idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    idx = std::min(idx, errors.size() - 1);
  }
  return out;
}

struct Anchor {
  Vector state;
  double time = 0.0;
};

// One (tau + 1)-row trajectory per anchor, started from the anchor plus
// Gaussian noise of amplitude * scale_i per coordinate, sampled at granularity.
inline std::vector<Trajectory> perturb_and_reintegrate(const SystemSpec& spec, const std::vector<Anchor>& anchors,
                                                       double amplitude, int tau, std::uint64_t seed,
                                                       double granularity, const Vector& scale, int jobs = 1) {
  require(tau >= 1, "tau must be >= 1");
  require(amplitude >= 0.0, "amplitude must be nonnegative");
  require(scale.size() == spec.dimension, "scale must have one entry per coordinate");
  return parallel_map(anchors.size(), jobs, [&](std::size_t i) {
    NormalSource normal(substream_seed(seed, i));
    Vector noise(spec.dimension);
    for (Eigen::Index j = 0; j < noise.size(); ++j) noise[j] = scale[j] * normal();
    // A perturbation that leaves the basin is halved until the run stays
    // bounded; the last attempt is the unperturbed anchor.
    double a = amplitude;
    for (int attempt = 0;; ++attempt) {
      const bool last = attempt == 8 || a == 0.0;
      try {
        return make_trajectory(spec, anchors[i].state + (last ? 0.0 : a) * noise, tau + 1, granularity, {},
                               anchors[i].time);
      } catch (const NumericalError&) {
        if (last) throw;
      }
      a *= 0.5;
    }
  });
}

// Contract for an iteratively trained univariate forecaster.
class IterativeLearner {
 public:
  virtual ~IterativeLearner() = default;
  virtual void reset(std::span<const double> reference, std::uint64_t seed) = 0;
  // One pass over every training window drawn from `segments`.
  virtual void train_epoch(const std::vector<std::vector<double>>& segments) = 0;
  virtual std::vector<double> forecast(std::span<const double> history, int horizon) const = 0;
  virtual int context() const = 0;
};

// Linear autoregression in increment form: the next increment is regressed on
// the current level and the last lags - 1 increments, each standardized. The
// map is equivalent to ordinary AR(lags) but far better conditioned on finely
// sampled series. Trained by shuffled mini-batch Adam on the one-step squared error.
class LinearArLearner : public IterativeLearner {
 public:
  explicit LinearArLearner(int lags = 10, int batch = 32, double learning_rate = 1e-2)
      : lags_(lags), batch_(batch), lr_(learning_rate) {
    require(lags >= 1 && batch >= 1, "lags and batch size must be >= 1");
    require(learning_rate > 0.0, "learning rate must be positive");
  }

  void reset(std::span<const double> reference, std::uint64_t seed) override {
    require(reference.size() >= 2, "reference series needs at least two points");
    const auto n = static_cast<double>(reference.size());
    mean_ = std::accumulate(reference.begin(), reference.end(), 0.0) / n;
    double var = 0.0, dvar = 0.0;
    for (double v : reference) var += (v - mean_) * (v - mean_);
    for (std::size_t i = 1; i < reference.size(); ++i) dvar += std::pow(reference[i] - reference[i - 1], 2);
    level_scale_ = var > 0.0 ? std::sqrt(var / n) : 1.0;
    step_scale_ = dvar > 0.0 ? std::sqrt(dvar / (n - 1.0)) : 1.0;
    const auto [lo, hi] = std::minmax_element(reference.begin(), reference.end());
    lo_ = *lo;
    hi_ = *hi;
    w_ = Vector::Zero(lags_ + 1);  // last entry is the intercept
    m_ = Vector::Zero(lags_ + 1);
    v_ = Vector::Zero(lags_ + 1);
    updates_ = 0;
    rng_.seed(seed);
  }

  void train_epoch(const std::vector<std::vector<double>>& segments) override {
    std::vector<std::pair<std::size_t, std::size_t>> windows;  // (segment, target index)
    for (std::size_t s = 0; s < segments.size(); ++s)
      for (std::size_t t = static_cast<std::size_t>(lags_); t < segments[s].size(); ++t) windows.emplace_back(s, t);
    if (windows.empty()) return;
    for (std::size_t i = windows.size(); i > 1; --i) std::swap(windows[i - 1], windows[rng_() % i]);
    Vector grad(lags_ + 1), x(lags_ + 1);
    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    for (std::size_t start = 0; start < windows.size(); start += static_cast<std::size_t>(batch_)) {
      const std::size_t stop = std::min(windows.size(), start + static_cast<std::size_t>(batch_));
      grad.setZero();
      for (std::size_t k = start; k < stop; ++k) {
        const auto& seg = segments[windows[k].first];
        const std::size_t t = windows[k].second;
        features(&seg[t - 1], x);
        const double r = w_.dot(x) - (seg[t] - seg[t - 1]) / step_scale_;
        grad += r * x;
      }
      grad *= 2.0 / static_cast<double>(stop - start);
      ++updates_;
      m_ = beta1 * m_ + (1.0 - beta1) * grad;
      v_ = beta2 * v_ + (1.0 - beta2) * grad.cwiseProduct(grad);
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(updates_));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(updates_));
      for (int j = 0; j <= lags_; ++j) w_[j] -= lr_ * (m_[j] / c1) / (std::sqrt(v_[j] / c2) + eps);
    }
  }

  std::vector<double> forecast(std::span<const double> history, int horizon) const override {
    require(history.size() >= static_cast<std::size_t>(lags_), "history shorter than the lag window");
    std::vector<double> buf(history.end() - lags_, history.end());
    buf.reserve(buf.size() + static_cast<std::size_t>(horizon));
    const double width = hi_ - lo_;
    Vector x(lags_ + 1);
    std::vector<double> out(static_cast<std::size_t>(horizon));
    for (auto& o : out) {
      features(&buf.back(), x);
      double v = buf.back() + step_scale_ * w_.dot(x);
      v = std::isfinite(v) ? std::clamp(v, lo_ - width, hi_ + width) : buf.back();
      buf.push_back(v);
      o = v;
    }
    return out;
  }

  int context() const override { return lags_; }
  // Coefficients on (level, increments..., 1) in standardized units.
  const Vector& weights() const { return w_; }

 private:
  // `now` points at x_t; x_{t-j} is now[-j].
  void features(const double* now, Vector& x) const {
    x[0] = (now[0] - mean_) / level_scale_;
    for (int j = 1; j < lags_; ++j) x[j] = (now[1 - j] - now[-j]) / step_scale_;
    x[lags_] = 1.0;
  }

  int lags_, batch_;
  double lr_;
  double mean_ = 0.0, level_scale_ = 1.0, step_scale_ = 1.0, lo_ = -1.0, hi_ = 1.0;
  Vector w_, m_, v_;
  long updates_ = 0;
  Rng rng_;
};

// Historical forecasts with the learner's current state: from origins
// context, context + h, ... forecast h points. Earlier points get the median.
inline std::vector<double> learner_backtest(const IterativeLearner& learner, std::span<const double> series,
                                            int horizon) {
  const auto w0 = static_cast<std::size_t>(learner.context());
  if (series.size() <= w0) throw InsufficientDataError("series shorter than the learner context");
  std::vector<double> errors(series.size(), 0.0);
  for (std::size_t origin = w0; origin < series.size(); origin += static_cast<std::size_t>(horizon)) {
    const int h = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(horizon), series.size() - origin));
    const auto pred = learner.forecast(series.first(origin), h);
    for (int i = 0; i < h; ++i) {
      const auto t = origin + static_cast<std::size_t>(i);
      errors[t] = std::abs(series[t] - pred[static_cast<std::size_t>(i)]);
    }
  }
  const double fill = median(std::vector<double>(errors.begin() + static_cast<std::ptrdiff_t>(w0), errors.end()));
  std::fill(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(w0), fill);
  return errors;
}

struct ImportanceResult {
  std::string system;
  SamplingMode mode = SamplingMode::full;
  double test_smape = 0.0;
  double seconds = 0.0;    // wall clock for the training loop
  int epochs = 0;
  std::size_t training_points = 0;  // total windows' source samples seen per epoch, last epoch
};

inline ImportanceResult importance_train(const SystemSpec& spec, IterativeLearner& learner,
                                         const ImportancePlan& plan) {
  plan.validate();
  const auto [ic_train, ic_test] = train_test_initial_conditions(spec, plan.seed);
  const double g = plan.granularity;
  const auto n_train = static_cast<Eigen::Index>(std::lround(plan.train_periods * g));
  const auto n_test = static_cast<Eigen::Index>(std::lround(plan.test_periods * g));
  const Trajectory train = make_trajectory(spec, ic_train, n_train, g);
  const Trajectory test = make_trajectory(spec, ic_test, n_train + n_test, g);
  const Vector train_x = train.column(0);
  const std::vector<double> train_series = to_std(train_x);
  const Vector attractor_std = coordinate_std(train.states);

  ImportanceResult out;
  out.system = spec.name;
  out.mode = plan.mode;
  const auto start = std::chrono::steady_clock::now();
  learner.reset(train_series, substream_seed(plan.seed, 0x1ea2));
  if (plan.mode == SamplingMode::full) {
    const std::vector<std::vector<double>> data{train_series};
    for (int e = 0; e < plan.B; ++e) learner.train_epoch(data);
    out.epochs = plan.B;
    out.training_points = train_series.size();
  } else {
    const std::size_t k = plan.anchors > 0 ? static_cast<std::size_t>(plan.anchors)
                                           : std::max<std::size_t>(1, train_series.size() / static_cast<std::size_t>(plan.tau));
    const bool weighted = plan.mode == SamplingMode::importance_weighted;
    for (int meta = 0; meta < plan.nu; ++meta) {
      const auto errors = learner_backtest(learner, train_series, plan.backtest_horizon);
      const auto idx = sample_weighted_points(errors, k, weighted, substream_seed(plan.seed, 2 * meta));
      std::vector<Anchor> anchors;
      for (std::size_t i : idx) anchors.push_back({train.row(static_cast<Eigen::Index>(i)), train.times[i]});
      const auto trajs = perturb_and_reintegrate(spec, anchors, plan.perturbation_amplitude, plan.tau,
                                                 substream_seed(plan.seed, 2 * meta + 1), g, attractor_std, plan.jobs);
      std::vector<std::vector<double>> segments;
      out.training_points = 0;
      for (const auto& t : trajs) {
        segments.push_back(to_std(t.column(0)));
        out.training_points += segments.back().size();
      }
      for (int e = 0; e < plan.b; ++e) learner.train_epoch(segments);
      out.epochs += plan.b;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Vector test_x = test.column(0);
  const std::span<const double> test_span(test_x.data(), static_cast<std::size_t>(test_x.size()));
  const auto history = test_span.first(static_cast<std::size_t>(n_train));
  const auto actual = test_span.subspan(static_cast<std::size_t>(n_train));
  const auto pred = learner.forecast(history, static_cast<int>(actual.size()));
  out.test_smape = smape(actual, std::span<const double>(pred));
  return out;
}

inline ImportanceResult importance_train(const SystemSpec& spec, const ImportancePlan& plan, int lags = 10) {
  LinearArLearner learner(lags);
  return importance_train(spec, learner, plan);
}

inline std::string importance_csv(const std::vector<ImportanceResult>& rows, bool smape_fraction = false) {
  std::string out = "system,mode,smape,seconds,epochs\n";
  for (const auto& r : rows)
    out += r.system + "," + to_string(r.mode) + "," + format_double(smape_fraction ? r.test_smape / 100.0 : r.test_smape) +
           "," + format_double(r.seconds) + "," + std::to_string(r.epochs) + "\n";
  return out;
}

}  // namespace chaosbench
