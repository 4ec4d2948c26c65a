#include "chaosbench/characterize.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace cb = chaosbench;

namespace {

cb::SystemSpec diagonal(double a, double b) {
  cb::SystemSpec s;
  s.name = "Diagonal";
  s.dimension = 2;
  s.parameters = {{"a", a}, {"b", b}};
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = p[0] * x[0];
    f[1] = p[1] * x[1];
  };
  s.analytic_jacobian = [](auto, double, auto p, auto j) {
    j[0] = p[0], j[1] = 0.0, j[2] = 0.0, j[3] = p[1];
  };
  s.default_initial_condition = {1.0, 1.0};
  s.dt = 0.01;
  s.period = 1.0;
  s.state_bound = 1e300;
  s.flags.chaotic = false;
  return s;
}

}  // namespace

TEST(Lyapunov, LinearDiagonalSystemGivesItsEigenvalues) {
  const auto s = diagonal(-0.5, -2.0);
  cb::LyapunovOptions o;
  o.replicates = 2;
  o.max_periods = 20;
  o.settle_periods = 1;
  o.spacing_periods = 1;
  o.expect_zero_exponent = false;
  o.tol = 0.0;
  const auto ls = cb::lyapunov_spectrum(s, o);
  ASSERT_EQ(ls.exponents.size(), 2u);
  EXPECT_NEAR(ls.exponents[0], -0.5, 1e-9);
  EXPECT_NEAR(ls.exponents[1], -2.0, 1e-9);
  EXPECT_NEAR(ls.sum(), -2.5, 1e-9);
}

TEST(Lyapunov, FiniteDifferenceJacobianPath) {
  auto s = diagonal(-0.5, -2.0);
  s.analytic_jacobian = nullptr;
  cb::LyapunovOptions o;
  o.replicates = 1;
  o.max_periods = 10;
  o.settle_periods = 1;
  o.spacing_periods = 1;
  o.expect_zero_exponent = false;
  o.tol = 0.0;
  const auto ls = cb::lyapunov_spectrum(s, o);
  EXPECT_NEAR(ls.exponents[0], -0.5, 1e-6);
  EXPECT_NEAR(ls.exponents[1], -2.0, 1e-6);
}

TEST(Lyapunov, NonConvergenceIsReported) {
  const auto s = diagonal(-0.5, -2.0);
  cb::LyapunovOptions o;
  o.replicates = 1;
  o.max_periods = 5;
  o.settle_periods = 1;
  EXPECT_THROW(cb::lyapunov_spectrum(s, o), cb::NonConvergenceError);
}

TEST(Lyapunov, DeterministicAcrossJobs) {
  const auto& s = cb::lookup("Rossler");
  cb::LyapunovOptions a;
  a.replicates = 3;
  a.max_periods = 50;
  a.residual_limit = 1e300;
  auto b = a;
  b.jobs = 3;
  const auto x = cb::lyapunov_spectrum(s, a), y = cb::lyapunov_spectrum(s, b);
  EXPECT_EQ(x.exponents, y.exponents);
  EXPECT_EQ(x.replicate_count, 3);
  EXPECT_EQ(x.replicates.size(), 3u);
}

TEST(Lyapunov, ReplicateInitialConditionsShareTheOrbit) {
  const auto& s = cb::lookup("Lorenz");
  const auto ics = cb::replicate_initial_conditions(s, 4, 0, 5, 20);
  ASSERT_EQ(ics.size(), 4u);
  for (std::size_t i = 1; i < ics.size(); ++i) EXPECT_GT((ics[i] - ics[i - 1]).norm(), 1e-3);
  const auto again = cb::replicate_initial_conditions(s, 4, 0, 5, 20);
  for (std::size_t i = 0; i < ics.size(); ++i) EXPECT_EQ(ics[i], again[i]);
}

TEST(KaplanYorke, HandComputed) {
  EXPECT_DOUBLE_EQ(cb::kaplan_yorke(std::vector<double>{1.0, 0.0, -2.0}), 2.5);
  EXPECT_DOUBLE_EQ(cb::kaplan_yorke(std::vector<double>{-1.0, -2.0}), 0.0);
  EXPECT_DOUBLE_EQ(cb::kaplan_yorke(std::vector<double>{0.5, 0.2}), 2.0);
  EXPECT_DOUBLE_EQ(cb::kaplan_yorke(std::vector<double>{2.0, -4.0, -5.0}), 1.5);
  EXPECT_THROW(cb::kaplan_yorke(std::vector<double>{-1.0, 1.0}), cb::ValidationError);
}

TEST(Pesin, SumOfPositiveExponents) {
  EXPECT_DOUBLE_EQ(cb::pesin_bound(std::vector<double>{0.9, 0.0, -14.5}), 0.9);
  EXPECT_DOUBLE_EQ(cb::pesin_bound(std::vector<double>{0.3, 0.1, -1.0}), 0.4);
  EXPECT_DOUBLE_EQ(cb::pesin_bound(std::vector<double>{-0.3}), 0.0);
}

TEST(CorrelationSum, MatchesDirectPairCount) {
  cb::Rng rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  cb::Matrix pts(600, 2);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) pts(i, 0) = u(rng), pts(i, 1) = u(rng);
  cb::CorrelationDimensionOptions o;
  o.n_radii = 5;
  for (int theiler : {0, 7}) {
    const auto cs = cb::correlation_sum(pts, o, theiler);
    for (std::size_t k = 0; k < cs.radii.size(); ++k) {
      std::size_t close = 0, total = 0;
      for (Eigen::Index i = 0; i < pts.rows(); ++i)
        for (Eigen::Index j = i + 1 + theiler; j < pts.rows(); ++j, ++total)
          if ((pts.row(i) - pts.row(j)).norm() < cs.radii[k]) ++close;
      EXPECT_NEAR(cs.fraction[k], static_cast<double>(close) / static_cast<double>(total), 1e-12);
    }
  }
}

TEST(CorrelationSum, SegmentsOnlyApplyTheilerWithin) {
  cb::Rng rng(2);
  std::normal_distribution<double> n;
  cb::Matrix pts(600, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (int c = 0; c < 3; ++c) pts(i, c) = n(rng);
  cb::CorrelationDimensionOptions o;
  o.n_radii = 4;
  const int theiler = 10;
  const Eigen::Index seg = 200;
  const auto cs = cb::correlation_sum(pts, o, theiler, seg);
  for (std::size_t k = 0; k < cs.radii.size(); ++k) {
    std::size_t close = 0, total = 0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
      for (Eigen::Index j = i + 1; j < pts.rows(); ++j) {
        if (i / seg == j / seg && j - i <= theiler) continue;
        ++total;
        if ((pts.row(i) - pts.row(j)).norm() < cs.radii[k]) ++close;
      }
    EXPECT_NEAR(cs.fraction[k], static_cast<double>(close) / static_cast<double>(total), 1e-12);
  }
}

TEST(CorrelationDimension, UniformCubeAndValidation) {
  cb::Rng rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  cb::Matrix pts(3000, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (int c = 0; c < 3; ++c) pts(i, c) = u(rng);
  EXPECT_NEAR(cb::correlation_dimension(pts, 0), 3.0, 0.2);
  EXPECT_THROW(cb::correlation_dimension(cb::Matrix::Zero(100, 2), 0), cb::ValidationError);
  cb::CorrelationDimensionOptions bad;
  bad.low_quantile = 0.5;
  bad.high_quantile = 0.1;
  EXPECT_THROW(cb::correlation_dimension(pts, 0, bad), cb::ValidationError);
  EXPECT_THROW(cb::correlation_dimension(cb::Matrix::Zero(600, 2), 0), cb::InsufficientDataError);
}

TEST(SampleEntropy, SmallSeriesByHand) {
  // m = 1, r = 0.5: the first four points are the templates.
  const std::vector<double> x{1, 2, 1, 2, 1};
  std::size_t b = 0, a = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(x[i] - x[j]) <= 0.5) {
        ++b;
        if (std::abs(x[i + 1] - x[j + 1]) <= 0.5) ++a;
      }
  EXPECT_DOUBLE_EQ(cb::sample_entropy(x, 1, 0.5), -std::log(static_cast<double>(a) / static_cast<double>(b)));
  EXPECT_EQ(cb::sample_entropy(std::vector<double>(50, 1.0), 2, 0.0), 0.0);
  EXPECT_THROW(cb::sample_entropy(std::vector<double>{1, 2, 3, 4, 5, 6}, 2, 0.1), cb::UndefinedEntropyError);
  EXPECT_THROW(cb::sample_entropy(std::vector<double>{1, 2}, 2, 0.1), cb::ValidationError);
}

TEST(MultiscaleEntropy, CoarseGrainAndOrdering) {
  EXPECT_EQ(cb::coarse_grain(std::vector<double>{1, 3, 5, 7, 9}, 2), (std::vector<double>{2, 6}));
  cb::NormalSource n(4);
  std::vector<double> noise(3000), sine(3000);
  for (std::size_t i = 0; i < noise.size(); ++i) {
    noise[i] = n();
    sine[i] = std::sin(0.1 * static_cast<double>(i));
  }
  EXPECT_GT(cb::multiscale_entropy_1d(noise), cb::multiscale_entropy_1d(sine));
  cb::EntropyOptions o;
  o.scales = {1, 50};
  EXPECT_THROW(cb::multiscale_entropy_1d(noise, o), cb::ValidationError);
}

TEST(Median, OddAndEven) {
  EXPECT_DOUBLE_EQ(cb::median({3, 1, 2}), 2.0);
  EXPECT_DOUBLE_EQ(cb::median({4, 1, 2, 3}), 2.5);
  EXPECT_THROW(cb::median({}), cb::ValidationError);
}
