#include "chaosbench/metrics.hpp"

#include <gtest/gtest.h>

namespace cb = chaosbench;

TEST(Smape, HandComputed) {
  // 200/2 * (|1-3|/4 + |2-2|/4)
  EXPECT_DOUBLE_EQ(cb::smape(std::vector<double>{1, 2}, std::vector<double>{3, 2}), 50.0);
  EXPECT_DOUBLE_EQ(cb::smape(std::vector<double>{1, -1}, std::vector<double>{-1, 1}), 200.0);
  EXPECT_DOUBLE_EQ(cb::smape(std::vector<double>{0, 2}, std::vector<double>{0, 2}), 0.0);
  EXPECT_THROW(cb::smape(std::vector<double>{0}, std::vector<double>{0}), cb::InsufficientDataError);
  EXPECT_THROW(cb::smape(std::vector<double>{1}, std::vector<double>{1, 2}), cb::DimensionMismatchError);
}

TEST(MetricSuite, HandComputed) {
  const std::vector<double> a{1, 2, 3, 4}, p{2, 2, 2, 2}, insample{0, 1, 3, 6};
  const auto m = cb::metric_suite(a, p, insample);
  EXPECT_DOUBLE_EQ(m.mse, (1 + 0 + 1 + 4) / 4.0);
  EXPECT_DOUBLE_EQ(m.rmse, std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(m.mae, 1.0);
  EXPECT_DOUBLE_EQ(m.mape, 100.0 * (1.0 + 0.0 + 1.0 / 3.0 + 0.5) / 4.0);
  EXPECT_DOUBLE_EQ(m.smape, 50.0 * (1.0 / 3.0 + 0.0 + 0.2 + 2.0 / 6.0));
  EXPECT_DOUBLE_EQ(m.marre, 100.0 * 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.cv_abs, 100.0 * std::sqrt(1.5) / 2.5);
  EXPECT_DOUBLE_EQ(m.one_minus_r2, 6.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.mase, 1.0 / 2.0);  // naive scale (1 + 2 + 3) / 3
}

TEST(MetricSuite, PerfectForecast) {
  const std::vector<double> a{1, 3, 2}, insample{1, 2};
  const auto m = cb::metric_suite(a, a, insample);
  EXPECT_EQ(m.mse, 0.0);
  EXPECT_EQ(m.smape, 0.0);
  EXPECT_EQ(m.one_minus_r2, 0.0);
  EXPECT_EQ(m.mase, 0.0);
}

TEST(MetricSuite, DegenerateInputs) {
  const std::vector<double> flat{2, 2, 2};
  EXPECT_THROW(cb::metric_suite(flat, std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), cb::NumericalError);
  EXPECT_THROW(cb::metric_suite(std::vector<double>{1, 2}, std::vector<double>{1, 2}, std::vector<double>{3, 3}),
               cb::NumericalError);
  EXPECT_THROW(cb::metric_value(cb::MetricSuite{}, "nope"), cb::ValidationError);
  EXPECT_EQ(cb::metric_names().size(), 9u);
}

TEST(Ranks, TiesShareMeanRank) {
  const std::vector<double> x{10, 20, 10, 30, 20, 20};
  const auto r = cb::average_ranks(x);
  EXPECT_EQ(r, (std::vector<double>{1.5, 4, 1.5, 6, 4, 4}));
}

TEST(Correlation, KnownValues) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(cb::spearman(x, std::vector<double>{1, 4, 9, 16, 25}), 1.0);
  EXPECT_DOUBLE_EQ(cb::spearman(x, std::vector<double>{5, 4, 3, 2, 1}), -1.0);
  // ranks (1,2,3,4,5) vs (2,1,4,3,5): 1 - 6*4/(5*24)
  EXPECT_NEAR(cb::spearman(x, std::vector<double>{2, 1, 4, 3, 5}), 0.8, 1e-12);
  EXPECT_NEAR(cb::pearson(x, std::vector<double>{2, 4, 6, 8, 10}), 1.0, 1e-15);
  EXPECT_THROW(cb::pearson(x, std::vector<double>(5, 1.0)), cb::NumericalError);
  EXPECT_THROW(cb::spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), cb::ValidationError);
}

TEST(MetricJson, NonFiniteBecomesNull) {
  cb::MetricSuite m;
  m.cv_abs = std::numeric_limits<double>::infinity();
  const auto j = cb::to_json(m);
  EXPECT_TRUE(j["cv_abs"].is_null());
  EXPECT_EQ(j["mse"], 0.0);
}
