#include "chaosbench/registry.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace cb = chaosbench;

TEST(Registry, ListIsSortedAndComplete) {
  const auto names = cb::list_systems();
  EXPECT_GE(names.size(), 20u);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_NE(std::find(names.begin(), names.end(), "Lorenz"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "Torus"), names.end());
}

TEST(Registry, FiltersPartitionTheCatalog) {
  const auto all = cb::list_systems().size();
  EXPECT_EQ(cb::list_systems(cb::filters::autonomous).size() + cb::list_systems(cb::filters::nonautonomous).size(), all);
  EXPECT_EQ(cb::list_systems(cb::filters::hamiltonian).size() + cb::list_systems(cb::filters::dissipative).size(), all);
  for (const auto& n : cb::list_systems(cb::filters::hamiltonian)) EXPECT_TRUE(static_cast<bool>(cb::lookup(n).energy));
  const auto regular = all - cb::list_systems(cb::filters::chaotic).size();
  EXPECT_GE(regular, 1u);
}

TEST(Registry, UnknownNameSuggestsNearest) {
  try {
    cb::lookup("Lorentz");
    FAIL();
  } catch (const cb::UnknownSystemError& e) {
    ASSERT_FALSE(e.suggestions().empty());
    EXPECT_EQ(e.suggestions().front(), "Lorenz");
  }
  EXPECT_THROW(cb::lookup(""), cb::ValidationError);
}

TEST(Registry, EditDistance) {
  EXPECT_EQ(cb::detail::edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(cb::detail::edit_distance("LORENZ", "lorenz"), 0u);
  EXPECT_EQ(cb::detail::edit_distance("", "abc"), 3u);
}

TEST(Registry, RejectsInvalidSpecs) {
  auto good = cb::lookup("Lorenz");
  auto dup = good;
  EXPECT_THROW(cb::Registry({good, dup}), cb::ValidationError);
  auto bad_ic = good;
  bad_ic.default_initial_condition.pop_back();
  EXPECT_THROW(cb::Registry({bad_ic}), cb::ValidationError);
  auto bad_dt = good;
  bad_dt.dt = bad_dt.period * 2;
  EXPECT_THROW(cb::Registry({bad_dt}), cb::ValidationError);
  cb::Registry custom({good});
  EXPECT_EQ(custom.size(), 1u);
  EXPECT_TRUE(custom.contains("Lorenz"));
}

TEST(Registry, SpecInvariants) {
  for (const auto& n : cb::list_systems()) {
    const auto& s = cb::lookup(n);
    SCOPED_TRACE(n);
    EXPECT_EQ(static_cast<int>(s.default_initial_condition.size()), s.dimension);
    EXPECT_GT(s.dt, 0.0);
    EXPECT_LT(s.dt, s.period);
    EXPECT_FALSE(s.citation.empty());
    EXPECT_FALSE(s.description.empty());
    for (double v : s.default_initial_condition) EXPECT_LT(std::abs(v), s.state_bound);
  }
}

TEST(Registry, RhsMatchesLorenzByHand) {
  const auto& s = cb::lookup("Lorenz");
  cb::Vector x(3);
  x << 1.0, 2.0, 3.0;
  const cb::Vector f = cb::rhs_eval(s, x, 0.0);
  EXPECT_DOUBLE_EQ(f[0], 10.0 * (2.0 - 1.0));
  EXPECT_DOUBLE_EQ(f[1], 1.0 * (28.0 - 3.0) - 2.0);
  EXPECT_DOUBLE_EQ(f[2], 1.0 * 2.0 - 8.0 / 3.0 * 3.0);
  EXPECT_THROW(cb::rhs_eval(s, cb::Vector::Zero(2), 0.0), cb::DimensionMismatchError);
  cb::Vector nan = x;
  nan[0] = std::nan("");
  EXPECT_THROW(cb::rhs_eval(s, nan, 0.0), cb::NonFiniteError);
}

TEST(Registry, AnalyticJacobiansAgreeWithFiniteDifferences) {
  for (const auto& n : cb::list_systems()) {
    const auto& s = cb::lookup(n);
    if (!s.analytic_jacobian) continue;
    SCOPED_TRACE(n);
    const cb::Vector x = cb::to_vector(s.default_initial_condition);
    const cb::Matrix ja = cb::jacobian_eval(s, x, 0.3);
    const cb::Matrix jf = cb::jacobian_eval(s, x, 0.3, 1e-6, true);
    EXPECT_LT((ja - jf).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, ja.cwiseAbs().maxCoeff()));
  }
}

TEST(Registry, ParameterAccess) {
  auto s = cb::lookup("Lorenz");
  EXPECT_DOUBLE_EQ(s.parameter("rho"), 28.0);
  s.set_parameter("rho", 20.0);
  EXPECT_DOUBLE_EQ(s.parameter_values()[1], 20.0);
  EXPECT_THROW(s.parameter("nope"), cb::ValidationError);
  EXPECT_DOUBLE_EQ(cb::lookup("Lorenz").parameter("rho"), 28.0);
}
