#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ats/error.hpp"
#include "ats/ma_filter.hpp"

using namespace ats;

TEST_CASE("constant input is unchanged") {
  for (std::size_t n : {1u, 2u, 5u, 9u, 10u, 1000u}) {
    const std::vector<double> x(n, 250.0);
    for (auto mode : {MaMode::centered, MaMode::causal}) {
      const auto r = moving_average(x, {9, mode});
      for (double v : r.denoised) CHECK(v == doctest::Approx(250.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("causal impulse response is nine taps of 1/9") {
  std::vector<double> x(40, 0.0);
  x[20] = 1.0;
  const auto r = moving_average(x, {9, MaMode::causal});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double expect = (i >= 20 && i < 29) ? 1.0 / 9.0 : 0.0;
    CHECK(r.denoised[i] == doctest::Approx(expect).epsilon(1e-15));
  }
}

TEST_CASE("centered window on 0..8") {
  std::vector<double> x(9);
  for (std::size_t i = 0; i < 9; ++i) x[i] = static_cast<double>(i);
  const auto r = moving_average(x, {9, MaMode::centered});
  CHECK(r.denoised[4] == doctest::Approx(4.0));
  CHECK(r.denoised.front() == 0.0);
  CHECK(r.denoised.back() == 8.0);
}

TEST_CASE("residual completes the decomposition") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(257);
  for (double& v : x) v = 200.0 + g(rng);
  for (auto mode : {MaMode::centered, MaMode::causal}) {
    const auto r = moving_average(x, {9, mode});
    REQUIRE(r.residual.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(r.denoised[i] + r.residual[i] == doctest::Approx(x[i]).epsilon(1e-14));
    CHECK(r.method == Method::ma);
  }
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(300), b(300), mix(300);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = g(rng);
    b[i] = g(rng);
    mix[i] = 2.5 * a[i] - 0.75 * b[i];
  }
  for (auto mode : {MaMode::centered, MaMode::causal}) {
    const auto ya = moving_average(a, {9, mode}).denoised;
    const auto yb = moving_average(b, {9, mode}).denoised;
    const auto ym = moving_average(mix, {9, mode}).denoised;
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(ym[i] == doctest::Approx(2.5 * ya[i] - 0.75 * yb[i]).epsilon(1e-12));
  }
}

TEST_CASE("centered mode is exact on affine input") {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 3.0 - 0.25 * static_cast<double>(i);
  const auto y = moving_average(x, {9, MaMode::centered}).denoised;
  // With the shrinking window this holds at the edges too.
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(moving_average(std::vector<double>{1.0}, {0, MaMode::causal}), Error);
  CHECK_THROWS_AS(moving_average(std::vector<double>{1.0}, {8, MaMode::centered}), Error);
  CHECK_NOTHROW(moving_average(std::vector<double>{1.0}, {8, MaMode::causal}));
  CHECK_THROWS_AS(moving_average(std::vector<double>{}, {}), Error);
  CHECK(ma_mode_from_string("causal") == MaMode::causal);
  CHECK_FALSE(ma_mode_from_string("trailing"));
}

TEST_CASE("short inputs stay finite") {
  for (std::size_t n = 1; n < 12; ++n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i * i);
    for (auto mode : {MaMode::centered, MaMode::causal}) {
      const auto y = moving_average(x, {9, mode}).denoised;
      REQUIRE(y.size() == n);
      for (double v : y) CHECK(std::isfinite(v));
    }
  }
}
