#include "chaosbench/importance.hpp"
#include "chaosbench/registry.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace cb = chaosbench;

TEST(WeightedSampling, FrequenciesFollowTheErrors) {
  const std::vector<double> errors{1.0, 0.0, 3.0, 6.0};
  const std::size_t k = 200000;
  const auto idx = cb::sample_weighted_points(errors, k, true, 11);
  std::vector<double> freq(errors.size(), 0.0);
  for (auto i : idx) freq[i] += 1.0 / static_cast<double>(k);
  const std::vector<double> expected{0.1, 0.0, 0.3, 0.6};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double sd = std::sqrt(expected[i] * (1.0 - expected[i]) / static_cast<double>(k));
    EXPECT_NEAR(freq[i], expected[i], 4.0 * sd + 1e-12) << i;
  }
  EXPECT_EQ(idx, cb::sample_weighted_points(errors, k, true, 11));
}

TEST(WeightedSampling, UniformModeAndZeroErrorFallback) {
  const std::vector<double> zeros(5, 0.0);
  const auto w = cb::sample_weighted_points(zeros, 1000, true, 4);
  const auto u = cb::sample_weighted_points(zeros, 1000, false, 4);
  EXPECT_EQ(w, u);
  std::vector<int> counts(5, 0);
  for (auto i : u) ++counts[i];
  for (int c : counts) EXPECT_GT(c, 120);
  EXPECT_THROW(cb::sample_weighted_points(std::vector<double>{1.0, -1.0}, 3, true, 0), cb::ValidationError);
  EXPECT_THROW(cb::sample_weighted_points(std::vector<double>{}, 3, true, 0), cb::ValidationError);
}

TEST(Perturb, DeterministicAndSized) {
  const auto& s = cb::lookup("Lorenz");
  const cb::Vector ic = cb::settle_on_attractor(s, cb::to_vector(s.default_initial_condition), 5);
  const std::vector<cb::Anchor> anchors{{ic, 0.0}, {ic, 0.0}};
  const cb::Vector scale = cb::Vector::Ones(3);
  const auto a = cb::perturb_and_reintegrate(s, anchors, 0.05, 20, 9, 50.0, scale);
  const auto b = cb::perturb_and_reintegrate(s, anchors, 0.05, 20, 9, 50.0, scale, 2);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].size(), 21);
  EXPECT_EQ(a[0].states, b[0].states);
  EXPECT_EQ(a[1].states, b[1].states);
  EXPECT_NE(a[0].row(0), a[1].row(0));
  EXPECT_NEAR((a[0].row(0) - ic).norm(), 0.0, 0.5);
  const auto zero = cb::perturb_and_reintegrate(s, anchors, 0.0, 5, 9, 50.0, scale);
  EXPECT_EQ(zero[0].row(0), ic);
}

TEST(LinearArLearner, LearnsASine) {
  std::vector<double> x(400);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2.0 * M_PI * static_cast<double>(i) / 40.0);
  cb::LinearArLearner learner(4);
  learner.reset(x, 1);
  const std::vector<std::vector<double>> data{x};
  const auto before = cb::learner_backtest(learner, x, 10);
  for (int e = 0; e < 200; ++e) learner.train_epoch(data);
  const auto after = cb::learner_backtest(learner, x, 10);
  EXPECT_LT(cb::median(after), 0.1 * cb::median(before));
  EXPECT_EQ(after.size(), x.size());
  EXPECT_THROW(learner.forecast(std::vector<double>{1.0}, 3), cb::ValidationError);
}

TEST(ImportancePlan, Validation) {
  cb::ImportancePlan p;
  EXPECT_NO_THROW(p.validate());
  p.nu = 20;
  p.b = 30;
  p.B = 400;
  EXPECT_THROW(p.validate(), cb::ValidationError);
  p = {};
  p.tau = 0;
  EXPECT_THROW(p.validate(), cb::ValidationError);
  EXPECT_EQ(cb::sampling_mode_from_string("weighted"), cb::SamplingMode::importance_weighted);
  EXPECT_THROW(cb::sampling_mode_from_string("x"), cb::ValidationError);
}

TEST(ImportanceTrain, DeterministicEpochAccounting) {
  const auto& s = cb::lookup("Torus");
  cb::ImportancePlan p;
  p.B = 40;
  p.b = 5;
  p.nu = 3;
  p.seed = 2;
  for (auto mode : {cb::SamplingMode::full, cb::SamplingMode::random_subset, cb::SamplingMode::importance_weighted}) {
    p.mode = mode;
    const auto a = cb::importance_train(s, p);
    const auto b = cb::importance_train(s, p);
    EXPECT_EQ(a.test_smape, b.test_smape);
    EXPECT_TRUE(std::isfinite(a.test_smape));
    EXPECT_EQ(a.epochs, mode == cb::SamplingMode::full ? 40 : 15);
    if (mode != cb::SamplingMode::full) EXPECT_EQ(a.training_points, (1000u / 150u) * 151u);
  }
  std::vector<cb::ImportanceResult> rows(1);
  rows[0].system = "Torus";
  EXPECT_EQ(cb::importance_csv(rows).substr(0, 33), "system,mode,smape,seconds,epochs\n");
}
