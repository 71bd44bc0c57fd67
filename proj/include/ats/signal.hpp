#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ats {

// The six kelvin-domain ATS channels (k = 1..6; boom 1 first, tip to base)
// plus the two per-boom ambient estimates consumed by min_combine.
enum class Channel {
  boom1_tip,
  boom1_mid,
  boom1_base,
  boom2_tip,
  boom2_mid,
  boom2_base,
  boom1_ambient,
  boom2_ambient,
};

inline constexpr double kDefaultGapThreshold = 1.5;  // seconds
inline constexpr std::size_t kDefaultMinSegmentLen = 64;

std::string_view to_string(Channel channel);
std::optional<Channel> channel_from_string(std::string_view name);
// 1-based measurement index k; nullopt for the ambient channels.
std::optional<int> measurement_index(Channel channel);
std::optional<Channel> channel_from_index(int k);

// Uniformly sampled (nominal 1 Hz) kelvin series. Construction validates the
// invariants, so a Signal that exists is always well formed.
class Signal {
 public:
  Signal(Channel channel, std::vector<double> timestamps, std::vector<double> samples,
         std::optional<int> sol = std::nullopt);

  Channel channel() const noexcept { return channel_; }
  std::span<const double> timestamps() const noexcept { return timestamps_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::optional<int> sol() const noexcept { return sol_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  Channel channel_;
  std::vector<double> timestamps_;
  std::vector<double> samples_;
  std::optional<int> sol_;
};

// Half-open index range [start, end) into the parent signal.
struct Segment {
  Channel channel;
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<double> timestamps;
  std::vector<double> samples;

  std::size_t size() const noexcept { return end - start; }
};

struct SkippedRun {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string reason;

  std::size_t size() const noexcept { return end - start; }
};

struct Segmentation {
  std::vector<Segment> segments;
  std::vector<SkippedRun> skipped;
};

// Splits the signal at every timestamp step larger than gap_threshold. Runs
// shorter than min_segment_len are reported in `skipped`, in input order.
Segmentation segment(const Signal& signal, double gap_threshold = kDefaultGapThreshold,
                     std::size_t min_segment_len = kDefaultMinSegmentLen);

struct BoomTemperaturePair {
  std::vector<double> timestamps;
  std::vector<double> t1;
  std::vector<double> t2;
};

// Elementwise minimum of the two boom ambient estimates.
std::vector<double> min_combine(std::span<const double> t1, std::span<const double> t2);
std::vector<double> min_combine(const BoomTemperaturePair& pair);

}  // namespace ats
