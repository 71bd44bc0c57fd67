#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ats/denoiser.hpp"
#include "ats/error.hpp"
#include "ats/metrics.hpp"
#include "ats/synthetic.hpp"

using namespace ats;

TEST_CASE("prd") {
  const std::vector<double> x{2, 0, 0};
  CHECK(prd(x, x) == 0.0);
  CHECK(prd(x, std::vector<double>{1, 0, 0}) == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(prd(std::vector<double>{3, -4, 5}, std::vector<double>(3, 0.0)) == 100.0);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(100), b(100), sa(100), sb(100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = 200 + g(rng);
    b[i] = a[i] + 0.1 * g(rng);
    sa[i] = -3.5 * a[i];
    sb[i] = -3.5 * b[i];
  }
  CHECK(prd(sa, sb) == doctest::Approx(prd(a, b)).epsilon(1e-12));

  CHECK_THROWS_AS(prd(x, std::vector<double>{1, 0}), Error);
  CHECK_THROWS_AS(prd(std::vector<double>{}, std::vector<double>{}), Error);
  CHECK_THROWS_AS(prd(std::vector<double>{0, 0}, std::vector<double>{1, 0}), Error);
}

TEST_CASE("residual_sigma") {
  CHECK(residual_sigma(std::vector<double>(20, 0.3)) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(residual_sigma(std::vector<double>{-1, 1}) == doctest::Approx(std::numbers::sqrt2));
  CHECK_THROWS_AS(residual_sigma(std::vector<double>{1}), Error);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 0.05);
  std::vector<double> e(100000), shifted(100000);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = g(rng);
    shifted[i] = e[i] + 42.0;
  }
  CHECK(std::abs(residual_sigma(e) - 0.05) < 0.02 * 0.05);
  CHECK(residual_sigma(shifted) == doctest::Approx(residual_sigma(e)).epsilon(1e-9));
}

TEST_CASE("compare_against_reference") {
  const std::map<Method, double> clean{{Method::dwt, 0.04}, {Method::ma, 0.05}};
  const std::map<Method, double> perturbed{{Method::dwt, 0.06}, {Method::ma, 0.13}};
  const auto cmp = compare_against_reference(clean, perturbed);
  REQUIRE(cmp.rows.size() == 2);
  for (const auto& row : cmp.rows) {
    CHECK(row.flagged == (row.method == Method::ma));
    CHECK(row.ratio == doctest::Approx(row.perturbed_sigma / row.clean_sigma));
  }
  CHECK(cmp.render().find("ma\t") != std::string::npos);

  const auto same = compare_against_reference(clean, clean);
  for (const auto& row : same.rows) CHECK_FALSE(row.flagged);

  const std::map<Method, double> partial{{Method::ma, 0.2}};
  const auto missing = compare_against_reference(clean, partial);
  REQUIRE(missing.rows.size() == 1);
  CHECK(missing.rows[0].method == Method::ma);
  CHECK(missing.rows[0].flagged);
}

TEST_CASE("make_report and method configuration") {
  MethodConfig cfg;
  CHECK(describe(cfg) == "dwt wavelet=coif5 levels=auto");
  cfg.levels = 4;
  CHECK(describe(cfg) == "dwt wavelet=coif5 levels=4");
  cfg.wavelet = "coif9";
  CHECK_THROWS_AS(validate(cfg), Error);
  MethodConfig ma;
  ma.method = Method::ma;
  CHECK(describe(ma) == "ma span=9 mode=centered");
  ma.ma.span = 4;
  CHECK_THROWS_AS(validate(ma), Error);

  const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
  MethodConfig m3;
  m3.method = Method::ma;
  m3.ma.span = 3;
  const auto r = denoise(x, m3);
  const auto rep = make_report(x, r, m3, 0.5);
  CHECK(rep.method == Method::ma);
  CHECK(rep.n_samples == 8);
  CHECK(rep.elapsed == 0.5);
  CHECK(rep.prd == doctest::Approx(prd(x, r.denoised)));
  CHECK(rep.residual_sigma == doctest::Approx(residual_sigma(r.residual)));
}

TEST_CASE("run_benchmark") {
  SyntheticSpec spec;
  spec.n = 8192;
  spec.seed = 3;
  const auto sig = make_synthetic(spec);
  std::vector<MethodConfig> methods(3);
  methods[0].method = Method::ma;
  methods[1].method = Method::dwt;
  methods[2].method = Method::hht;
  CHECK_THROWS_AS(run_benchmark(methods, sig.noisy, 2), Error);

  const auto reps = run_benchmark(methods, sig.noisy, 3);
  REQUIRE(reps.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(reps[k].method == methods[k].method);
    CHECK(reps[k].elapsed > 0.0);
    CHECK(reps[k].n_samples == spec.n);
    // Timing never changes the numbers.
    const auto direct = make_report(sig.noisy, denoise(sig.noisy, methods[k]), methods[k], 0.0);
    CHECK(reps[k].prd == direct.prd);
    CHECK(reps[k].residual_sigma == direct.residual_sigma);
  }
  CHECK(reps[0].elapsed < reps[2].elapsed);
}

TEST_CASE("synthetic generator") {
  SyntheticSpec spec;
  spec.n = 5000;
  spec.steps = 10;
  spec.seed = 17;
  const auto a = make_synthetic(spec);
  const auto b = make_synthetic(spec);
  CHECK(a.noisy == b.noisy);
  REQUIRE(a.step_positions.size() == 10);
  for (std::size_t k = 1; k < a.step_positions.size(); ++k) {
    CHECK(a.step_positions[k] - a.step_positions[k - 1] >= spec.step_margin);
  }
  for (auto p : a.step_positions) {
    const double h = std::abs(a.clean[p] - a.clean[p - 1]);
    CHECK(h >= spec.step_min - 0.01);
    CHECK(h <= spec.step_max + 0.01);
  }
  spec.steps = 100;
  CHECK_THROWS_AS(make_synthetic(spec), Error);
}
