#pragma once

#include "chaosbench/characterize.hpp"
#include "chaosbench/core.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/metrics.hpp"
#include "chaosbench/parallel.hpp"
#include "chaosbench/system_spec.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chaosbench {

enum class ModelKind { naive_mean, naive_seasonal, naive_drift, fourier, ridge_ar };

inline const std::vector<ModelKind>& all_models() {
  static const std::vector<ModelKind> kinds{ModelKind::naive_mean, ModelKind::naive_seasonal, ModelKind::naive_drift,
                                            ModelKind::fourier, ModelKind::ridge_ar};
  return kinds;
}

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::naive_mean: return "naive_mean";
    case ModelKind::naive_seasonal: return "naive_seasonal";
    case ModelKind::naive_drift: return "naive_drift";
    case ModelKind::fourier: return "fourier";
    case ModelKind::ridge_ar: return "ridge_ar";
  }
  return "unknown";
}

inline ModelKind model_kind_from_string(const std::string& s) {
  for (ModelKind k : all_models())
    if (to_string(k) == s) return k;
  throw ValidationError("unknown model '" + s + "'");
}

struct Hyperparameters {
  int season = 1;       // naive_seasonal
  int modes = 1;        // fourier
  int lags = 1;         // ridge_ar
  double ridge = 1e-6;  // ridge_ar, relative to the mean diagonal of X^T X

  // The hyperparameter playing the role of a timescale, if the model has one.
  std::optional<int> timescale(ModelKind k) const {
    switch (k) {
      case ModelKind::naive_seasonal: return season;
      case ModelKind::fourier: return modes;
      case ModelKind::ridge_ar: return lags;
      default: return std::nullopt;
    }
  }
  Hyperparameters with_timescale(ModelKind k, int value) const {
    Hyperparameters h = *this;
    if (k == ModelKind::naive_seasonal) h.season = value;
    if (k == ModelKind::fourier) h.modes = value;
    if (k == ModelKind::ridge_ar) h.lags = value;
    return h;
  }
  std::string describe(ModelKind k) const {
    switch (k) {
      case ModelKind::naive_seasonal: return "season=" + std::to_string(season);
      case ModelKind::fourier: return "modes=" + std::to_string(modes);
      case ModelKind::ridge_ar: return "lags=" + std::to_string(lags) + ";ridge=" + format_double(ridge);
      default: return "";
    }
  }
};

inline std::size_t min_fit_length(ModelKind k, const Hyperparameters& h) {
  const int t = h.timescale(k).value_or(1);
  return static_cast<std::size_t>(std::max(2, 2 * t));
}

class Forecaster {
 public:
  explicit Forecaster(ModelKind kind, Hyperparameters hp = {}) : kind_(kind), hp_(hp) {
    require(hp.season >= 1 && hp.modes >= 1 && hp.lags >= 1, "hyperparameters must be >= 1");
    require(hp.ridge >= 0.0, "ridge strength must be nonnegative");
  }

  ModelKind kind() const { return kind_; }
  const Hyperparameters& hyperparameters() const { return hp_; }
  bool fitted() const { return fitted_; }

  Forecaster& fit(std::span<const double> series) {
    const std::size_t need = min_fit_length(kind_, hp_);
    if (series.size() < need)
      throw InsufficientDataError(to_string(kind_) + " needs at least " + std::to_string(need) + " points, got " +
                                  std::to_string(series.size()));
    require(all_finite(series), "series must be finite");
    n_ = series.size();
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    lo_ = *lo, hi_ = *hi;
    switch (kind_) {
      case ModelKind::naive_mean:
        mean_ = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n_);
        break;
      case ModelKind::naive_seasonal:
        tail_.assign(series.end() - hp_.season, series.end());
        break;
      case ModelKind::naive_drift:
        last_ = series.back();
        slope_ = (series.back() - series.front()) / static_cast<double>(n_ - 1);
        break;
      case ModelKind::fourier:
        fit_fourier(series);
        break;
      case ModelKind::ridge_ar:
        fit_ridge(series);
        break;
    }
    fitted_ = true;
    return *this;
  }

  std::vector<double> predict(int horizon) const {
    if (!fitted_) throw ValidationError("predict called before fit");
    require(horizon >= 1, "horizon must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(horizon));
    for (std::size_t i = 0; i < out.size(); ++i) {
      switch (kind_) {
        case ModelKind::naive_mean: out[i] = mean_; break;
        case ModelKind::naive_seasonal: out[i] = tail_[i % tail_.size()]; break;
        case ModelKind::naive_drift: out[i] = last_ + slope_ * static_cast<double>(i + 1); break;
        case ModelKind::fourier: out[i] = fourier_at(static_cast<double>(n_ + i)); break;
        case ModelKind::ridge_ar: break;
      }
    }
    if (kind_ == ModelKind::ridge_ar) predict_ridge(out);
    return out;
  }

  // ridge_ar: lag weights (most recent first) and the intercept.
  const Vector& weights() const { return weights_; }
  double intercept() const { return intercept_; }

 private:
  void fit_fourier(std::span<const double> series) {
    std::vector<double> x(series.begin(), series.end());
    mean_ = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n_);
    for (double& v : x) v -= mean_;
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, x);
    std::vector<std::size_t> bins;
    for (std::size_t k = 1; k <= n_ / 2; ++k) bins.push_back(k);
    std::stable_sort(bins.begin(), bins.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(spec[a]) > std::abs(spec[b]); });
    bins.resize(std::min<std::size_t>(bins.size(), static_cast<std::size_t>(hp_.modes)));
    modes_.clear();
    for (std::size_t k : bins) {
      const bool unpaired = n_ % 2 == 0 && k == n_ / 2;
      const double amp = (unpaired ? 1.0 : 2.0) * std::abs(spec[k]) / static_cast<double>(n_);
      modes_.push_back({static_cast<double>(k) / static_cast<double>(n_), amp, std::arg(spec[k])});
    }
  }

  double fourier_at(double t) const {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double v = mean_;
    for (const auto& m : modes_) v += m.amplitude * std::cos(two_pi * m.frequency * t + m.phase);
    return v;
  }

  void fit_ridge(std::span<const double> series) {
    const auto L = static_cast<Eigen::Index>(hp_.lags);
    const auto rows = static_cast<Eigen::Index>(n_) - L;
    Matrix X(rows, L);
    Vector y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      y[r] = series[static_cast<std::size_t>(r + L)];
      for (Eigen::Index j = 0; j < L; ++j) X(r, j) = series[static_cast<std::size_t>(r + L - 1 - j)];
    }
    const Eigen::RowVectorXd xm = X.colwise().mean();
    const double ym = y.mean();
    X.rowwise() -= xm;
    y.array() -= ym;
    Matrix gram = X.transpose() * X;
    const double scale = std::max(gram.diagonal().mean(), std::numeric_limits<double>::min());
    gram.diagonal().array() += hp_.ridge * scale;
    weights_ = gram.ldlt().solve(X.transpose() * y);
    if (!weights_.allFinite()) throw NumericalError("ridge_ar normal equations are singular");
    intercept_ = ym - xm.dot(weights_);
    history_.assign(series.end() - hp_.lags, series.end());
  }

  // Recursive multi-step prediction, clamped to the training range widened
  // by one range on each side.
  void predict_ridge(std::vector<double>& out) const {
    const double width = std::max(hi_ - lo_, 1e-12);
    std::vector<double> buf = history_;
    for (double& o : out) {
      double v = intercept_;
      for (int j = 0; j < hp_.lags; ++j) v += weights_[j] * buf[buf.size() - 1 - static_cast<std::size_t>(j)];
      v = std::isfinite(v) ? std::clamp(v, lo_ - width, hi_ + width) : buf.back();
      o = v;
      buf.push_back(v);
    }
  }

  struct Mode {
    double frequency;  // cycles per sample
    double amplitude;
    double phase;
  };

  ModelKind kind_;
  Hyperparameters hp_;
  bool fitted_ = false;
  std::size_t n_ = 0;
  double lo_ = 0.0, hi_ = 0.0;
  double mean_ = 0.0, last_ = 0.0, slope_ = 0.0;
  std::vector<double> tail_, history_;
  std::vector<Mode> modes_;
  Vector weights_;
  double intercept_ = 0.0;
};

// Timescale grid: 1 point, 5 points, half a period, one period.
inline std::vector<int> timescale_grid(double granularity) {
  require(granularity >= 1.0, "granularity must be >= 1");
  std::vector<int> grid{1, 5, static_cast<int>(std::lround(granularity / 2.0)),
                        static_cast<int>(std::lround(granularity))};
  for (int& g : grid) g = std::max(1, g);
  return grid;
}

struct TuneResult {
  Hyperparameters hyperparameters;
  double validation_mse = 0.0;
};

// Train on all but the final two periods, validate on those two periods.
inline TuneResult tune(ModelKind kind, std::span<const double> series, double granularity,
                       const Hyperparameters& base = {}) {
  const auto valid = static_cast<std::size_t>(std::lround(2.0 * granularity));
  if (static_cast<double>(series.size()) < 12.0 * granularity - 1e-9)
    throw InsufficientDataError("tuning needs at least 12 periods of data");
  const auto train = series.first(series.size() - valid);
  const auto target = series.last(valid);
  auto score = [&](const Hyperparameters& hp) {
    const auto pred = Forecaster(kind, hp).fit(train).predict(static_cast<int>(valid));
    double s = 0.0;
    for (std::size_t i = 0; i < valid; ++i) s += (pred[i] - target[i]) * (pred[i] - target[i]);
    return s / static_cast<double>(valid);
  };
  if (!base.timescale(kind)) return {base, score(base)};
  TuneResult best{base, std::numeric_limits<double>::infinity()};
  for (int value : timescale_grid(granularity)) {
    const Hyperparameters hp = base.with_timescale(kind, value);
    const double mse = score(hp);
    if (mse < best.validation_mse) best = {hp, mse};
  }
  return best;
}

// Expanding-window historical forecasts: refit at origins w0, w0 + stride, ...
// and forecast `stride` points ahead. Points before w0 receive the median error.
inline std::vector<double> backtest(ModelKind kind, const Hyperparameters& hp, std::span<const double> series,
                                    int stride) {
  require(stride >= 1, "stride must be >= 1");
  const std::size_t w0 = min_fit_length(kind, hp);
  if (series.size() <= w0)
    throw InsufficientDataError("backtest needs more than " + std::to_string(w0) + " points");
  std::vector<double> errors(series.size(), 0.0);
  for (std::size_t origin = w0; origin < series.size(); origin += static_cast<std::size_t>(stride)) {
    const int h = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(stride), series.size() - origin));
    const auto pred = Forecaster(kind, hp).fit(series.first(origin)).predict(h);
    for (int i = 0; i < h; ++i)
      errors[origin + static_cast<std::size_t>(i)] = std::abs(series[origin + static_cast<std::size_t>(i)] - pred[static_cast<std::size_t>(i)]);
  }
  const double fill = median(std::vector<double>(errors.begin() + static_cast<std::ptrdiff_t>(w0), errors.end()));
  std::fill(errors.begin(), errors.begin() + static_cast<std::ptrdiff_t>(w0), fill);
  return errors;
}

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

struct BenchmarkRow {
  std::string system;
  double granularity = 0.0;
  ModelKind model = ModelKind::naive_mean;
  Hyperparameters hyperparameters;
  std::vector<double> train_initial_condition;
  std::vector<double> test_initial_condition;
  MetricSuite metrics;
  std::string error;  // nonempty when the row failed
  bool ok() const { return error.empty(); }
};

// Train and test initial conditions: two seeded states on the attractor of
// the default ic. Shared by the benchmarks and the dataset builder.
inline std::pair<Vector, Vector> train_test_initial_conditions(const SystemSpec& spec, std::uint64_t seed,
                                                               int settle_periods = 20) {
  auto ics = replicate_initial_conditions(spec, 2, name_seed(seed, spec.name), 5, settle_periods);
  return {ics[0], ics[1]};
}

struct BenchmarkOptions {
  std::vector<double> granularities{15.0};
  std::vector<ModelKind> models = all_models();
  std::uint64_t seed = 0;
  int train_periods = 10;
  int test_periods = 2;
  int jobs = 1;
};

inline std::vector<BenchmarkRow> run_benchmark(const std::vector<SystemSpec>& systems,
                                               const BenchmarkOptions& opts = {}) {
  struct Task {
    std::size_t system;
    double granularity;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < systems.size(); ++s)
    for (double g : opts.granularities) tasks.push_back({s, g});

  auto per_task = parallel_map(tasks.size(), opts.jobs, [&](std::size_t t) {
    const SystemSpec& spec = systems[tasks[t].system];
    const double g = tasks[t].granularity;
    std::vector<BenchmarkRow> rows;
    for (ModelKind m : opts.models) {
      BenchmarkRow row;
      row.system = spec.name;
      row.granularity = g;
      row.model = m;
      rows.push_back(row);
    }
    try {
      const auto [ic_train, ic_test] = train_test_initial_conditions(spec, opts.seed);
      const auto total = static_cast<Eigen::Index>(std::lround((opts.train_periods + opts.test_periods) * g));
      const Vector train = make_trajectory(spec, ic_train, total, g).column(0);
      const Vector test = make_trajectory(spec, ic_test, total, g).column(0);
      const auto n_fit = static_cast<std::size_t>(std::lround(opts.train_periods * g));
      const std::span<const double> test_span(test.data(), static_cast<std::size_t>(test.size()));
      for (auto& row : rows) {
        row.train_initial_condition = to_std(ic_train);
        row.test_initial_condition = to_std(ic_test);
        try {
          row.hyperparameters = tune(row.model, as_span(train), g).hyperparameters;
          const auto history = test_span.first(n_fit);
          const auto actual = test_span.subspan(n_fit);
          const auto pred = Forecaster(row.model, row.hyperparameters).fit(history).predict(static_cast<int>(actual.size()));
          row.metrics = metric_suite(actual, std::span<const double>(pred), history);
        } catch (const Error& e) {
          row.error = e.what();
        }
      }
    } catch (const Error& e) {
      for (auto& row : rows) row.error = e.what();
    }
    return rows;
  });
  std::vector<BenchmarkRow> out;
  for (auto& rows : per_task)
    for (auto& r : rows) out.push_back(std::move(r));
  return out;
}

inline const std::vector<std::string>& annotation_names() {
  static const std::vector<std::string> names{"largest_lyapunov", "correlation_dimension", "kaplan_yorke_dimension",
                                              "multiscale_entropy", "pesin_entropy"};
  return names;
}

inline double annotation_value(const SystemAnnotations& a, const std::string& name) {
  if (name == "largest_lyapunov") return a.largest_lyapunov;
  if (name == "correlation_dimension") return a.correlation_dimension;
  if (name == "kaplan_yorke_dimension") return a.kaplan_yorke_dimension;
  if (name == "multiscale_entropy") return a.multiscale_entropy;
  if (name == "pesin_entropy") return a.pesin_entropy;
  throw ValidationError("unknown annotation '" + name + "'");
}

// Per system, the lowest value of `metric` over successful models at `granularity`.
inline std::map<std::string, double> best_model_metric(const std::vector<BenchmarkRow>& rows, double granularity,
                                                       const std::string& metric) {
  std::map<std::string, double> best;
  for (const auto& r : rows) {
    if (!r.ok() || std::abs(r.granularity - granularity) > 1e-9) continue;
    const double v = metric_value(r.metrics, metric);
    if (!std::isfinite(v)) continue;
    auto [it, inserted] = best.emplace(r.system, v);
    if (!inserted) it->second = std::min(it->second, v);
  }
  return best;
}

// metric -> annotation -> Spearman correlation across systems, NaN when
// fewer than three systems have both values.
inline std::map<std::string, std::map<std::string, double>> benchmark_correlations(
    const std::vector<BenchmarkRow>& rows, double granularity,
    const std::map<std::string, SystemAnnotations>& annotations) {
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& metric : metric_names()) {
    const auto best = best_model_metric(rows, granularity, metric);
    for (const auto& ann : annotation_names()) {
      std::vector<double> x, y;
      for (const auto& [system, value] : best) {
        auto it = annotations.find(system);
        if (it == annotations.end()) continue;
        const double a = annotation_value(it->second, ann);
        if (!std::isfinite(a)) continue;
        x.push_back(a);
        y.push_back(value);
      }
      double rho = std::numeric_limits<double>::quiet_NaN();
      if (x.size() >= 3) {
        try {
          rho = spearman(x, y);
        } catch (const NumericalError&) {
        }
      }
      out[metric][ann] = rho;
    }
  }
  return out;
}

inline std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, bool smape_fraction = false) {
  std::string out = "system,granularity,model,hyperparameters";
  for (const auto& m : metric_names()) out += "," + m;
  out += ",error\n";
  for (const auto& r : rows) {
    out += r.system + "," + format_double(r.granularity) + "," + to_string(r.model) + "," +
           r.hyperparameters.describe(r.model);
    for (const auto& m : metric_names()) {
      out += ",";
      if (!r.ok()) continue;
      double v = metric_value(r.metrics, m);
      if (smape_fraction && m == "smape") v /= 100.0;
      out += format_double(v);
    }
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out += "," + err + "\n";
  }
  return out;
}

}  // namespace chaosbench
