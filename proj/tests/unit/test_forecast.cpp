#include "chaosbench/forecast.hpp"
#include "chaosbench/registry.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace cb = chaosbench;

namespace {

std::vector<double> sine(std::size_t n, double period, double phase = 0.0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / period + phase);
  return x;
}

}  // namespace

TEST(Forecaster, NaiveModelsByHand) {
  const std::vector<double> x{1, 2, 3, 4, 6};
  EXPECT_EQ(cb::Forecaster(cb::ModelKind::naive_mean).fit(x).predict(2), (std::vector<double>{3.2, 3.2}));
  cb::Hyperparameters h;
  h.season = 2;
  EXPECT_EQ(cb::Forecaster(cb::ModelKind::naive_seasonal, h).fit(x).predict(3), (std::vector<double>{4, 6, 4}));
  const auto drift = cb::Forecaster(cb::ModelKind::naive_drift).fit(x).predict(2);
  EXPECT_DOUBLE_EQ(drift[0], 7.25);
  EXPECT_DOUBLE_EQ(drift[1], 8.5);
}

TEST(Forecaster, FitValidation) {
  cb::Hyperparameters h;
  h.lags = 10;
  EXPECT_THROW(cb::Forecaster(cb::ModelKind::ridge_ar, h).fit(std::vector<double>(15, 1.0)), cb::InsufficientDataError);
  EXPECT_THROW(cb::Forecaster(cb::ModelKind::naive_mean).predict(1), cb::ValidationError);
  h.lags = 0;
  EXPECT_THROW(cb::Forecaster(cb::ModelKind::ridge_ar, h), cb::ValidationError);
  EXPECT_THROW(cb::Forecaster(cb::ModelKind::naive_mean).fit(std::vector<double>{1, NAN, 2}), cb::ValidationError);
  EXPECT_THROW(cb::model_kind_from_string("arima"), cb::ValidationError);
  for (auto k : cb::all_models()) EXPECT_EQ(cb::model_kind_from_string(cb::to_string(k)), k);
}

TEST(Forecaster, FourierContinuesAPureTone) {
  const auto x = sine(200, 20.0, 0.3);
  cb::Hyperparameters h;
  h.modes = 1;
  const auto pred = cb::Forecaster(cb::ModelKind::fourier, h).fit(x).predict(40);
  const auto truth = sine(240, 20.0, 0.3);
  for (std::size_t i = 0; i < pred.size(); ++i) EXPECT_NEAR(pred[i], truth[200 + i], 1e-9);
}

TEST(Forecaster, RidgeArRecoversALinearRecurrence) {
  // x_t = 2 cos(w) x_{t-1} - x_{t-2} holds exactly for a sampled sinusoid.
  const double w = 2.0 * M_PI / 17.0;
  const auto x = sine(300, 17.0);
  cb::Hyperparameters h;
  h.lags = 2;
  h.ridge = 0.0;
  cb::Forecaster f(cb::ModelKind::ridge_ar, h);
  f.fit(x);
  EXPECT_NEAR(f.weights()[0], 2.0 * std::cos(w), 1e-8);
  EXPECT_NEAR(f.weights()[1], -1.0, 1e-8);
  EXPECT_NEAR(f.intercept(), 0.0, 1e-8);
  const auto pred = f.predict(30);
  const auto truth = sine(330, 17.0);
  for (std::size_t i = 0; i < pred.size(); ++i) EXPECT_NEAR(pred[i], truth[300 + i], 1e-6);
}

TEST(Forecaster, RidgeArPredictionsStayInWidenedRange) {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(1.05, static_cast<double>(i % 50));
  cb::Hyperparameters h;
  h.lags = 3;
  const auto pred = cb::Forecaster(cb::ModelKind::ridge_ar, h).fit(x).predict(500);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  for (double v : pred) {
    EXPECT_GE(v, *lo - (*hi - *lo));
    EXPECT_LE(v, *hi + (*hi - *lo));
  }
}

TEST(Tune, GridAndSelection) {
  EXPECT_EQ(cb::timescale_grid(15), (std::vector<int>{1, 5, 8, 15}));
  EXPECT_EQ(cb::timescale_grid(1), (std::vector<int>{1, 5, 1, 1}));
  const auto x = sine(15 * 14, 15.0);
  const auto r = cb::tune(cb::ModelKind::naive_seasonal, x, 15.0);
  EXPECT_EQ(r.hyperparameters.season, 15);
  EXPECT_NEAR(r.validation_mse, 0.0, 1e-20);
  EXPECT_THROW(cb::tune(cb::ModelKind::naive_mean, std::vector<double>(100, 0.0), 15.0), cb::InsufficientDataError);
}

TEST(Backtest, ExpandingWindowErrors) {
  const std::vector<double> x{0, 1, 2, 3, 4, 5, 6, 7};
  // Mean of the first k points is (k-1)/2, so the one-step error at k is (k+1)/2.
  const auto e = cb::backtest(cb::ModelKind::naive_mean, {}, x, 1);
  ASSERT_EQ(e.size(), x.size());
  for (std::size_t k = 2; k < x.size(); ++k) EXPECT_DOUBLE_EQ(e[k], (static_cast<double>(k) + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(e[0], 2.75);
  EXPECT_DOUBLE_EQ(e[1], 2.75);
  const auto d = cb::backtest(cb::ModelKind::naive_drift, {}, x, 3);
  for (double v : d) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Benchmark, DeterministicAndJobInvariant) {
  const std::vector<cb::SystemSpec> systems{cb::lookup("Lorenz"), cb::lookup("Torus")};
  cb::BenchmarkOptions o;
  o.seed = 5;
  const auto a = cb::run_benchmark(systems, o);
  o.jobs = 2;
  const auto b = cb::run_benchmark(systems, o);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(cb::benchmark_csv(a), cb::benchmark_csv(b));
  for (const auto& r : a) EXPECT_TRUE(r.ok()) << r.system << " " << cb::to_string(r.model) << ": " << r.error;
  const auto best = cb::best_model_metric(a, 15.0, "smape");
  EXPECT_EQ(best.size(), 2u);
  EXPECT_LT(best.at("Torus"), best.at("Lorenz"));
}

TEST(Benchmark, FailuresAreRecordedPerRow) {
  cb::SystemSpec s;
  s.name = "Blowup";
  s.dimension = 1;
  s.rhs = [](auto x, double, auto, auto f) { f[0] = x[0] * x[0]; };
  s.default_initial_condition = {1.0};
  s.dt = 0.01;
  s.period = 1.0;
  const auto rows = cb::run_benchmark({s});
  ASSERT_EQ(rows.size(), cb::all_models().size());
  for (const auto& r : rows) EXPECT_FALSE(r.ok());
  EXPECT_NE(cb::benchmark_csv(rows).find("Blowup,15,naive_mean,,"), std::string::npos);
}

TEST(Benchmark, CorrelationsNeedThreeSystems) {
  std::vector<cb::BenchmarkRow> rows;
  std::map<std::string, cb::SystemAnnotations> ann;
  for (int i = 0; i < 4; ++i) {
    cb::BenchmarkRow r;
    r.system = "S" + std::to_string(i);
    r.granularity = 15;
    r.metrics.smape = 10.0 * i;
    rows.push_back(r);
    cb::SystemAnnotations a;
    a.largest_lyapunov = 0.1 * i;
    ann[r.system] = a;
  }
  auto c = cb::benchmark_correlations(rows, 15, ann);
  EXPECT_DOUBLE_EQ(c["smape"]["largest_lyapunov"], 1.0);
  ann.erase("S0");
  ann.erase("S1");
  c = cb::benchmark_correlations(rows, 15, ann);
  EXPECT_TRUE(std::isnan(c["smape"]["largest_lyapunov"]));
}
