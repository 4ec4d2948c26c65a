#pragma once

#include "chaosbench/core.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace chaosbench {

struct MetricSuite {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double mape = 0.0;
  double smape = 0.0;
  double marre = 0.0;
  double cv_abs = 0.0;
  double one_minus_r2 = 0.0;
  double mase = 0.0;
};

inline const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names{"mse",   "rmse",   "mae",          "mape", "smape",
                                              "marre", "cv_abs", "one_minus_r2", "mase"};
  return names;
}

inline double metric_value(const MetricSuite& m, const std::string& name) {
  if (name == "mse") return m.mse;
  if (name == "rmse") return m.rmse;
  if (name == "mae") return m.mae;
  if (name == "mape") return m.mape;
  if (name == "smape") return m.smape;
  if (name == "marre") return m.marre;
  if (name == "cv_abs") return m.cv_abs;
  if (name == "one_minus_r2") return m.one_minus_r2;
  if (name == "mase") return m.mase;
  throw ValidationError("unknown metric '" + name + "'");
}

namespace detail {

inline void require_pair(std::span<const double> a, std::span<const double> p) {
  require(!a.empty(), "metric inputs must be nonempty");
  if (a.size() != p.size())
    throw DimensionMismatchError("actual has " + std::to_string(a.size()) + " values, predicted has " +
                                 std::to_string(p.size()));
}

}  // namespace detail

// Percent, 200/n convention; pairs with |a| + |p| == 0 are skipped.
inline double smape(std::span<const double> actual, std::span<const double> predicted) {
  detail::require_pair(actual, predicted);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double denom = std::abs(actual[i]) + std::abs(predicted[i]);
    if (denom == 0.0) continue;
    sum += std::abs(actual[i] - predicted[i]) / denom;
    ++n;
  }
  if (n == 0) throw InsufficientDataError("sMAPE undefined: every pair is zero");
  return 200.0 * sum / static_cast<double>(n);
}

inline double smape(const std::vector<double>& actual, const std::vector<double>& predicted) {
  return smape(std::span<const double>(actual), std::span<const double>(predicted));
}

// Mean absolute error of the one-step persistence forecast on `insample`.
inline double naive_scale(std::span<const double> insample) {
  require(insample.size() >= 2, "MASE needs an in-sample series of length >= 2");
  double s = 0.0;
  for (std::size_t i = 1; i < insample.size(); ++i) s += std::abs(insample[i] - insample[i - 1]);
  return s / static_cast<double>(insample.size() - 1);
}

inline MetricSuite metric_suite(std::span<const double> actual, std::span<const double> predicted,
                                std::span<const double> insample) {
  detail::require_pair(actual, predicted);
  const auto n = static_cast<double>(actual.size());
  MetricSuite m;
  double sse = 0.0, sae = 0.0, sape = 0.0;
  std::size_t ape_count = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    sse += e * e;
    sae += std::abs(e);
    if (actual[i] != 0.0) {
      sape += std::abs(e / actual[i]);
      ++ape_count;
    }
  }
  m.mse = sse / n;
  m.rmse = std::sqrt(m.mse);
  m.mae = sae / n;
  m.mape = ape_count ? 100.0 * sape / static_cast<double>(ape_count) : 0.0;
  m.smape = sae == 0.0 ? 0.0 : smape(actual, predicted);

  const auto [lo, hi] = std::minmax_element(actual.begin(), actual.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw NumericalError("MARRE undefined: actual series has zero range");
  m.marre = 100.0 * m.mae / range;

  const double mean = std::accumulate(actual.begin(), actual.end(), 0.0) / n;
  m.cv_abs = mean == 0.0 ? (sse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                         : std::abs(100.0 * m.rmse / mean);
  double ss_tot = 0.0;
  for (double a : actual) ss_tot += (a - mean) * (a - mean);
  m.one_minus_r2 = sse / ss_tot;

  const double scale = naive_scale(insample);
  if (!(scale > 0.0)) throw NumericalError("MASE undefined: in-sample series is constant");
  m.mase = m.mae / scale;
  return m;
}

inline MetricSuite metric_suite(const std::vector<double>& actual, const std::vector<double>& predicted,
                                const std::vector<double>& insample) {
  return metric_suite(std::span<const double>(actual), std::span<const double>(predicted),
                      std::span<const double>(insample));
}

inline nlohmann::ordered_json to_json(const MetricSuite& m) {
  nlohmann::ordered_json j;
  for (const auto& name : metric_names()) {
    const double v = metric_value(m, name);
    j[name] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
  }
  return j;
}

// 1-based ranks, ties share the mean of the ranks they occupy.
inline std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  detail::require_pair(x, y);
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw NumericalError("correlation undefined: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
  detail::require_pair(x, y);
  require(x.size() >= 3, "Spearman correlation needs at least 3 points");
  const auto rx = average_ranks(x), ry = average_ranks(y);
  return pearson(rx, ry);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return spearman(std::span<const double>(x), std::span<const double>(y));
}

}  // namespace chaosbench
