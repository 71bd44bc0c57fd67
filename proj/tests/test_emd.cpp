#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ats/emd.hpp"
#include "ats/error.hpp"
#include "ats/ma_filter.hpp"
#include "ats/shrinkage.hpp"

using namespace ats;

namespace {

double correlation(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> gaussian(std::size_t n, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return x;
}

void check_complete(std::span<const double> x, const EmdDecomposition& d) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < x.size(); ++i) {
    double s = d.residual[i];
    for (const auto& imf : d.imfs) s += imf[i];
    REQUIRE(std::abs(s - x[i]) <= 1e-8 * scale);
  }
}

}  // namespace

TEST_CASE("find_extrema") {
  const auto e = find_extrema(std::vector<double>{0, 1, 0, -1, 0, 1, 0});
  CHECK(e.maxima == std::vector<std::size_t>{1, 5});
  CHECK(e.minima == std::vector<std::size_t>{3});

  const auto ramp = find_extrema(std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(ramp.maxima.empty());
  CHECK(ramp.minima.empty());

  CHECK(find_extrema(std::vector<double>{0, 1, 1, 0}).maxima == std::vector<std::size_t>{1});
  CHECK(find_extrema(std::vector<double>{0, 1, 1, 1, 1, 0}).maxima == std::vector<std::size_t>{2});
  // A shelf on the way up is not an extremum.
  const auto shelf = find_extrema(std::vector<double>{0, 1, 1, 2});
  CHECK(shelf.count() == 0);
}

TEST_CASE("zero crossings") {
  CHECK(zero_crossings(std::vector<double>{1, -1, 1, -1}) == 3);
  CHECK(zero_crossings(std::vector<double>{1, 0, -1}) == 1);
  CHECK(zero_crossings(std::vector<double>{1, 2, 3}) == 0);
}

TEST_CASE("envelope") {
  std::vector<double> x(50, 0.0);
  std::vector<std::size_t> idx{5, 17, 30, 44};
  for (auto i : idx) x[i] = 1.0;
  for (double v : envelope(x, idx)) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const std::size_t n = 2048;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = 3.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 128.0);
  const auto upper = envelope(s, find_extrema(s).maxima);
  for (std::size_t i = 128; i < n - 128; ++i) CHECK(std::abs(upper[i] - 3.0) < 0.02 * 3.0);

  std::vector<double> one(40, 0.0);
  one[20] = 2.0;
  const std::vector<std::size_t> single{20};
  const auto env = envelope(one, single);
  REQUIRE(env.size() == one.size());
  for (double v : env) CHECK(std::isfinite(v));
}

TEST_CASE("sift") {
  const std::size_t n = 2048;
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::sin(2.0 * std::numbers::pi * 20.0 * static_cast<double>(i) / static_cast<double>(n));
  const auto r = sift(s);
  REQUIRE(r);
  CHECK(correlation(r->imf, s) > 0.99);
  CHECK(r->iterations >= 1);

  // One subtraction with a cap of one.
  SiftConfig one;
  one.max_siftings = 1;
  auto noisy = gaussian(500, 1.0, 4);
  const auto capped = sift(noisy, one);
  REQUIRE(capped);
  CHECK(capped->iterations == 1);
  const auto ex = find_extrema(noisy);
  const auto up = envelope(noisy, ex.maxima);
  const auto lo = envelope(noisy, ex.minima);
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    CHECK(capped->imf[i] == doctest::Approx(noisy[i] - 0.5 * (up[i] + lo[i])).epsilon(1e-12));
  }

  // A symmetric oscillation already meets the stop rule at the first check.
  std::vector<double> tone(1000);
  for (std::size_t i = 0; i < tone.size(); ++i) tone[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / 50.0);
  const auto t = sift(tone);
  REQUIRE(t);
  CHECK(t->iterations == 1);
  for (std::size_t i = 0; i < tone.size(); ++i) CHECK(std::abs(t->imf[i] - tone[i]) < 0.05);

  CHECK_FALSE(sift(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST_CASE("emd: tone plus trend") {
  const std::size_t n = 4096;
  std::vector<double> x(n), tone(n), trend(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    tone[i] = std::sin(2.0 * std::numbers::pi * 50.0 * t);
    trend[i] = 0.5 * t;
    x[i] = tone[i] + trend[i];
  }
  const auto d = emd(x);
  REQUIRE(d.mode_count() >= 1);
  CHECK(correlation(d.imfs[0], tone) > 0.95);
  CHECK(correlation(d.residual, trend) > 0.95);
  check_complete(x, d);
  CHECK(d.sift_counts.size() == d.imfs.size());
}

TEST_CASE("emd: monotone input has no modes") {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::exp(0.01 * static_cast<double>(i));
  const auto d = emd(x);
  CHECK(d.mode_count() == 0);
  CHECK(d.residual == x);
  CHECK_THROWS_AS(emd(std::vector<double>{1, 2, 1, 2, 1, 2, 1}), Error);
}

TEST_CASE("emd completeness on random and structured signals") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto x = gaussian(300 + 97 * seed, 1.0, seed);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += 200.0 + (seed % 2 ? 5.0 * std::sin(static_cast<double>(i) / 30.0) : 0.0);
    check_complete(x, emd(x));
  }
  std::vector<double> square(512);
  for (std::size_t i = 0; i < square.size(); ++i) square[i] = (i / 32) % 2 ? 1.0 : -1.0;
  check_complete(square, emd(square));
}

TEST_CASE("emd limits are reported") {
  SiftConfig cfg;
  cfg.max_imfs = 2;
  const auto x = gaussian(1000, 1.0, 12);
  const auto d = emd(x, cfg);
  CHECK(d.mode_count() == 2);
  check_complete(x, d);
  bool mentioned = false;
  for (const auto& w : d.warnings) mentioned = mentioned || w.find("mode cap") != std::string::npos;
  CHECK(mentioned);

  SiftConfig bad;
  bad.theta1 = 0.6;
  CHECK_THROWS_AS(emd(x, bad), Error);
}

TEST_CASE("cmse") {
  CHECK(cmse(std::vector<double>{1, -1, 2}) == doctest::Approx(2.0));
  CHECK(cmse(std::vector<double>(10, 0.0)) == 0.0);
  const std::vector<double> c{0.5, -1.25, 3.0};
  const std::vector<double> c3{1.5, -3.75, 9.0};
  CHECK(cmse(c3) == doctest::Approx(9.0 * cmse(c)));
}

namespace {

EmdDecomposition fake_modes(const std::vector<double>& mean_squares, std::size_t m) {
  EmdDecomposition d;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = k < mean_squares.size() ? std::sqrt(mean_squares[k]) : 1.0;
    d.imfs.push_back({a, -a, a, -a});
  }
  d.residual.assign(4, 0.0);
  return d;
}

}  // namespace

TEST_CASE("select_index") {
  auto s = select_index(fake_modes({4.0, 0.5, 3.0, 1.0}, 4));
  CHECK(s.j == 2);
  CHECK(s.per_mode_cmse.size() == 3);
  CHECK(select_index(fake_modes({1.0, 1.0}, 3)).j == 1);
  CHECK(select_index(fake_modes({7.0}, 2)).j == 1);
  const auto single = select_index(fake_modes({2.0}, 1));
  CHECK(single.j == 1);
  CHECK(single.warning);
  const auto none = select_index(fake_modes({}, 0));
  CHECK(none.j == 0);

  // Scaling the signal never moves the selection.
  const auto x = gaussian(2000, 1.0, 44);
  auto big = x;
  for (double& v : big) v *= 37.0;
  CHECK(select_index(emd(x)).j == select_index(emd(big)).j);
}

TEST_CASE("denoise_hht") {
  std::vector<double> ramp(200);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 250.0 + 0.01 * static_cast<double>(i);
  const auto flat = denoise_hht(ramp);
  for (std::size_t i = 0; i < ramp.size(); ++i) CHECK(std::abs(flat.result.denoised[i] - ramp[i]) < 1e-8 * 250.0);

  const auto noise = gaussian(4096, 0.05, 2024);
  const auto out = denoise_hht(noise);
  double m = 0.0, v = 0.0;
  for (double e : out.result.residual) m += e;
  m /= 4096.0;
  for (double e : out.result.residual) v += (e - m) * (e - m);
  CHECK(std::abs(std::sqrt(v / 4095.0) - 0.05) < 0.2 * 0.05);

  // Thresholded modes only shrink, the rest pass through bit for bit.
  REQUIRE(out.modes.size() == out.decomposition.imfs.size());
  CHECK(out.level_reports.size() == out.selection.j);
  for (std::size_t k = 0; k < out.modes.size(); ++k) {
    if (k < out.selection.j) {
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < 4096; ++i) {
        a = std::max(a, std::abs(out.modes[k][i]));
        b = std::max(b, std::abs(out.decomposition.imfs[k][i]));
      }
      CHECK(a <= b);
      CHECK(out.level_reports[k].theta == doctest::Approx(universal_threshold(out.level_reports[k].sigma, 4096)));
    } else {
      CHECK(out.modes[k] == out.decomposition.imfs[k]);
    }
  }
  for (std::size_t i = 0; i < 4096; ++i) {
    CHECK(out.result.denoised[i] + out.result.residual[i] == doctest::Approx(noise[i]).epsilon(1e-12));
  }
  CHECK(denoise_hht(noise).result.denoised == out.result.denoised);
}

TEST_CASE("denoise_hht keeps a step sharper than the moving average") {
  const std::size_t n = 2048;
  auto x = gaussian(n, 0.05, 99);
  std::vector<double> clean(n);
  for (std::size_t i = 0; i < n; ++i) {
    clean[i] = 220.0 + (i >= 1000 ? 1.0 : 0.0);
    x[i] += clean[i];
  }
  const auto h = denoise_hht(x).result.denoised;
  const auto ma = moving_average(x, {9, MaMode::centered}).denoised;
  double dh = 0.0, dm = 0.0;
  for (std::size_t i = 992; i <= 1008; ++i) {
    dh = std::max(dh, std::abs(h[i] - clean[i]));
    dm = std::max(dm, std::abs(ma[i] - clean[i]));
  }
  CHECK(dh < dm);
}
