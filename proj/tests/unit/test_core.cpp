#include "chaosbench/core.hpp"
#include "chaosbench/parallel.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cb = chaosbench;

TEST(Seeding, SubstreamsAreDeterministicAndDistinct) {
  EXPECT_EQ(cb::substream_seed(1, 2), cb::substream_seed(1, 2));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m)
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(cb::substream_seed(m, i));
  EXPECT_EQ(seen.size(), 4u * 256u);
  EXPECT_NE(cb::name_seed(0, "Lorenz"), cb::name_seed(0, "Rossler"));
  EXPECT_NE(cb::name_seed(0, "Lorenz"), cb::name_seed(1, "Lorenz"));
}

TEST(Seeding, Fnv1aKnownVectors) {
  EXPECT_EQ(cb::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(cb::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(NormalSource, MomentsAndReproducibility) {
  cb::NormalSource a(42), b(42);
  double sum = 0, sq = 0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = a();
    EXPECT_EQ(x, b());
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.02);
  cb::NormalSource u(7);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Format, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 123456789.123456789}) {
    const std::string s = cb::format_double(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(cb::format_double(0.5), "0.5");
}

TEST(Errors, HierarchyMapsToExitClasses) {
  EXPECT_THROW(cb::require(false, "x"), cb::ValidationError);
  const cb::UnknownSystemError unknown("Lorenx", {"Lorenz"});
  EXPECT_NE(std::string(unknown.what()).find("Lorenz"), std::string::npos);
  EXPECT_TRUE((std::is_base_of_v<cb::ValidationError, cb::DimensionMismatchError>));
  EXPECT_TRUE((std::is_base_of_v<cb::NumericalError, cb::DivergenceError>));
  EXPECT_TRUE((std::is_base_of_v<cb::NumericalError, cb::NoSignificantFrequencyError>));
  EXPECT_TRUE((std::is_base_of_v<cb::IoError, cb::ChecksumError>));
  EXPECT_FALSE((std::is_base_of_v<cb::ValidationError, cb::NumericalError>));
}

TEST(ParallelMap, OrderIndependentOfWorkerCount) {
  auto fn = [](std::size_t i) { return cb::substream_seed(9, i) % 1000; };
  const auto one = cb::parallel_map(100, 1, fn);
  const auto four = cb::parallel_map(100, 4, fn);
  EXPECT_EQ(one, four);
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i], fn(i));
  EXPECT_TRUE(cb::parallel_map(0, 3, fn).empty());
}

TEST(ParallelMap, RethrowsLowestIndexError) {
  auto fn = [](std::size_t i) -> int {
    if (i == 3) throw std::runtime_error("three");
    if (i == 7) throw std::runtime_error("seven");
    return static_cast<int>(i);
  };
  for (int jobs : {1, 4}) {
    try {
      cb::parallel_map(10, jobs, fn);
      FAIL() << "expected throw";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "three");
    }
  }
}
