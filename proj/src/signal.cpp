#include "ats/signal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ats/error.hpp"

namespace ats {

namespace {

constexpr std::array<std::pair<Channel, std::string_view>, 8> kChannelNames{{
    {Channel::boom1_tip, "boom1_tip"},
    {Channel::boom1_mid, "boom1_mid"},
    {Channel::boom1_base, "boom1_base"},
    {Channel::boom2_tip, "boom2_tip"},
    {Channel::boom2_mid, "boom2_mid"},
    {Channel::boom2_base, "boom2_base"},
    {Channel::boom1_ambient, "boom1_ambient"},
    {Channel::boom2_ambient, "boom2_ambient"},
}};

}  // namespace

std::string_view to_string(Channel channel) {
  for (const auto& [c, name] : kChannelNames) {
    if (c == channel) return name;
  }
  return "unknown";
}

std::optional<Channel> channel_from_string(std::string_view name) {
  for (const auto& [c, n] : kChannelNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::optional<int> measurement_index(Channel channel) {
  const int k = static_cast<int>(channel) + 1;
  if (k > 6) return std::nullopt;
  return k;
}

std::optional<Channel> channel_from_index(int k) {
  if (k < 1 || k > 6) return std::nullopt;
  return static_cast<Channel>(k - 1);
}

Signal::Signal(Channel channel, std::vector<double> timestamps, std::vector<double> samples,
               std::optional<int> sol)
    : channel_(channel), timestamps_(std::move(timestamps)), samples_(std::move(samples)), sol_(sol) {
  if (samples_.empty()) throw Error(ErrorKind::empty_input, "signal has no samples");
  if (samples_.size() != timestamps_.size()) {
    throw Error(ErrorKind::alignment, "signal timestamps and samples differ in length");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i]) || !std::isfinite(timestamps_[i])) {
      throw Error(ErrorKind::invalid_argument, "signal contains a non-finite value");
    }
    if (i > 0 && !(timestamps_[i] > timestamps_[i - 1])) {
      throw Error(ErrorKind::invalid_argument, "signal timestamps are not strictly increasing");
    }
  }
}

Segmentation segment(const Signal& signal, double gap_threshold, std::size_t min_segment_len) {
  if (!(gap_threshold > 0.0) || !std::isfinite(gap_threshold)) {
    throw Error(ErrorKind::invalid_argument, "gap threshold must be positive and finite");
  }
  if (min_segment_len == 0) throw Error(ErrorKind::invalid_argument, "minimum segment length must be at least 1");
  Segmentation out;
  const auto ts = signal.timestamps();
  const auto xs = signal.samples();
  const std::size_t n = signal.size();

  auto close_run = [&](std::size_t start, std::size_t end) {
    if (end - start >= min_segment_len) {
      Segment seg{signal.channel(), start, end,
                  std::vector<double>(ts.begin() + start, ts.begin() + end),
                  std::vector<double>(xs.begin() + start, xs.begin() + end)};
      out.segments.push_back(std::move(seg));
    } else {
      out.skipped.push_back({start, end,
                             "run of " + std::to_string(end - start) + " samples is shorter than " +
                                 std::to_string(min_segment_len)});
    }
  };

  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (ts[i] - ts[i - 1] > gap_threshold) {
      close_run(start, i);
      start = i;
    }
  }
  close_run(start, n);
  return out;
}

std::vector<double> min_combine(std::span<const double> t1, std::span<const double> t2) {
  if (t1.size() != t2.size()) {
    throw Error(ErrorKind::alignment, "boom series lengths differ (" + std::to_string(t1.size()) +
                                          " vs " + std::to_string(t2.size()) + ")");
  }
  std::vector<double> out(t1.size());
  std::transform(t1.begin(), t1.end(), t2.begin(), out.begin(),
                 [](double a, double b) { return std::min(a, b); });
  return out;
}

std::vector<double> min_combine(const BoomTemperaturePair& pair) {
  if (pair.timestamps.size() != pair.t1.size()) {
    throw Error(ErrorKind::alignment, "boom pair timestamps do not match the series length");
  }
  return min_combine(pair.t1, pair.t2);
}

}  // namespace ats
