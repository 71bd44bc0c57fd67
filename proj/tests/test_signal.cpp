#include <doctest.h>

#include <numeric>
#include <vector>

#include "ats/error.hpp"
#include "ats/signal.hpp"

using namespace ats;

namespace {

std::vector<double> ramp_times(double start, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = start + static_cast<double>(i);
  return t;
}

Signal from_runs(const std::vector<std::pair<double, std::size_t>>& runs) {
  std::vector<double> t;
  for (const auto& [start, n] : runs) {
    const auto r = ramp_times(start, n);
    t.insert(t.end(), r.begin(), r.end());
  }
  std::vector<double> x(t.size());
  std::iota(x.begin(), x.end(), 200.0);
  return Signal(Channel::boom1_tip, t, x);
}

}  // namespace

TEST_CASE("signal construction checks invariants") {
  CHECK_THROWS_AS(Signal(Channel::boom1_tip, {}, {}), Error);
  CHECK_THROWS_AS(Signal(Channel::boom1_tip, {0, 1}, {1}), Error);
  CHECK_THROWS_AS(Signal(Channel::boom1_tip, {0, 0}, {1, 2}), Error);
  CHECK_THROWS_AS(Signal(Channel::boom1_tip, {0, 1}, {1, std::numeric_limits<double>::quiet_NaN()}), Error);
  Signal s(Channel::boom2_mid, {0, 1, 2}, {1, 2, 3}, 120);
  CHECK(s.size() == 3);
  CHECK(s.sol() == 120);
}

TEST_CASE("channel names and indices round trip") {
  for (int k = 1; k <= 6; ++k) {
    const auto ch = channel_from_index(k);
    REQUIRE(ch);
    CHECK(measurement_index(*ch) == k);
    CHECK(channel_from_string(to_string(*ch)) == ch);
  }
  CHECK_FALSE(channel_from_index(7));
  CHECK_FALSE(measurement_index(Channel::boom1_ambient));
  CHECK_FALSE(channel_from_string("boom3_tip"));
}

TEST_CASE("segment: no gaps gives one segment") {
  const auto seg = segment(from_runs({{0.0, 200}}), 1.5, 64);
  REQUIRE(seg.segments.size() == 1);
  CHECK(seg.segments[0].size() == 200);
  CHECK(seg.skipped.empty());
}

TEST_CASE("segment: a long gap splits in two") {
  const auto seg = segment(from_runs({{0.0, 100}, {400.0, 100}}), 1.5, 64);
  REQUIRE(seg.segments.size() == 2);
  CHECK(seg.segments[0].size() == 100);
  CHECK(seg.segments[1].size() == 100);
  CHECK(seg.segments[1].start == 100);
  CHECK(seg.segments[1].timestamps.front() == 400.0);
}

TEST_CASE("segment: short run is reported as skipped") {
  const auto seg = segment(from_runs({{0.0, 100}, {400.0, 10}}), 1.5, 64);
  REQUIRE(seg.segments.size() == 1);
  CHECK(seg.segments[0].size() == 100);
  REQUIRE(seg.skipped.size() == 1);
  CHECK(seg.skipped[0].start == 100);
  CHECK(seg.skipped[0].size() == 10);
  CHECK_FALSE(seg.skipped[0].reason.empty());
}

TEST_CASE("segment is a partition and re-segmenting is idempotent") {
  const auto sig = from_runs({{0.0, 70}, {100.0, 5}, {110.0, 300}, {411.4, 80}, {600.0, 63}});
  const auto seg = segment(sig, 1.5, 64);
  std::vector<int> hits(sig.size(), 0);
  for (const auto& s : seg.segments) {
    for (std::size_t i = s.start; i < s.end; ++i) ++hits[i];
    CHECK(s.samples.size() == s.size());
  }
  for (const auto& r : seg.skipped) {
    for (std::size_t i = r.start; i < r.end; ++i) ++hits[i];
  }
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK(seg.segments.size() == 3);
  CHECK(seg.skipped.size() == 2);

  std::vector<double> t, x;
  for (const auto& s : seg.segments) {
    t.insert(t.end(), s.timestamps.begin(), s.timestamps.end());
    x.insert(x.end(), s.samples.begin(), s.samples.end());
  }
  const auto again = segment(Signal(Channel::boom1_tip, t, x), 1.5, 64);
  REQUIRE(again.segments.size() == seg.segments.size());
  for (std::size_t k = 0; k < seg.segments.size(); ++k) {
    CHECK(again.segments[k].samples == seg.segments[k].samples);
    CHECK(again.segments[k].timestamps == seg.segments[k].timestamps);
  }
  CHECK(again.skipped.empty());
}

TEST_CASE("segment rejects bad parameters") {
  const auto sig = from_runs({{0.0, 10}});
  CHECK_THROWS_AS(segment(sig, 0.0, 64), Error);
  CHECK_THROWS_AS(segment(sig, 1.5, 0), Error);
}

TEST_CASE("min_combine") {
  CHECK(min_combine(std::vector<double>{200, 210}, std::vector<double>{205, 205}) == std::vector<double>{200, 205});
  const std::vector<double> a{1.5, -2.0, 3.25};
  const std::vector<double> b{0.5, 4.0, 3.0};
  CHECK(min_combine(a, a) == a);
  CHECK(min_combine(a, b) == min_combine(b, a));
  try {
    min_combine(std::vector<double>{180}, std::vector<double>{181, 182});
    FAIL("expected alignment error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::alignment);
  }
  BoomTemperaturePair pair{{0, 1}, {200, 210}, {205, 205}};
  CHECK(min_combine(pair) == std::vector<double>{200, 205});
  pair.timestamps.pop_back();
  CHECK_THROWS_AS(min_combine(pair), Error);
}
