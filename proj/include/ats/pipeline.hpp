#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ats/denoiser.hpp"
#include "ats/ingest.hpp"
#include "ats/metrics.hpp"
#include "ats/signal.hpp"

#include <json.hpp>

namespace ats {

inline constexpr const char* kVersion = "0.1.0";

enum class TemperatureUnit { kelvin, celsius };

struct PipelineConfig {
  MethodConfig method;
  std::filesystem::path input;
  std::filesystem::path mapping_path;  // echoed into the manifest only
  ColumnMapping mapping;
  double gap_threshold = kDefaultGapThreshold;
  std::size_t min_segment_len = kDefaultMinSegmentLen;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> report_path;
  bool plot = false;
  // Unit the PRD in the reports is computed in; data files are always kelvin.
  TemperatureUnit report_units = TemperatureUnit::kelvin;
  unsigned jobs = 1;
};

enum class SegmentStatus { processed, skipped, failed };

struct SegmentOutcome {
  Channel channel = Channel::boom1_tip;
  std::size_t start = 0;  // [start, end) into the ingested channel signal
  std::size_t end = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  SegmentStatus status = SegmentStatus::processed;
  std::string reason;
  std::optional<MetricsReport> metrics;
  std::vector<std::string> warnings;
};

struct RunManifest {
  nlohmann::json config;
  std::string version = kVersion;
  std::string input_sha256;
  std::size_t data_rows = 0;
  std::map<Channel, ChannelIngest> ingest;
  std::vector<SegmentOutcome> outcomes;  // channel order, then time order
  std::vector<std::string> outputs;      // file names relative to output_dir
  std::vector<std::string> notes;

  std::size_t samples_in(SegmentStatus status) const;
};

nlohmann::json to_json(const RunManifest& manifest, bool include_timing = true);

// File names used for one channel's outputs.
std::string denoised_file_name(Channel channel, Method method);
std::string residual_file_name(Channel channel, Method method);
std::string report_file_name(Channel channel, Method method);
std::string plot_file_name(Channel channel, Method method);
std::string combined_file_name(Method method);
inline constexpr const char* kManifestFileName = "manifest.json";

// Ingest, segment, denoise and write every output. Configuration and
// ingestion errors throw; numerical failures inside a segment are recorded in
// the manifest and only skip that segment.
RunManifest run_pipeline(const PipelineConfig& cfg);

// Shortest round-trip decimal form of v.
std::string format_number(double v);

}  // namespace ats
