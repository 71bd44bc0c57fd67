#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ats/signal.hpp"

namespace ats {

enum class Delimiter { automatic, comma, whitespace };

// Column mapping for a delimited telemetry table. Columns are referenced by
// header name or by 0-based position. Read from a plain key = value file:
//
//   header = true
//   delimiter = auto            # auto | comma | whitespace
//   timestamp = SCLK
//   timestamp_scale = 1.0       # multiplier to seconds
//   channel.1 = ATS1_TIP        # k = 1..6
//   boom1_ambient = T1_AMB      # optional; both booms enable min-combination
//   boom2_ambient = T2_AMB
//   sentinel = 9999.0, -9999    # empty fields are always missing
//   sol = 120
struct ColumnMapping {
  bool header = true;
  Delimiter delimiter = Delimiter::automatic;
  std::string timestamp;
  double timestamp_scale = 1.0;
  std::map<Channel, std::string> channels;
  std::vector<std::string> sentinels;
  std::optional<int> sol;
};

ColumnMapping parse_mapping(std::istream& in);
ColumnMapping load_mapping(const std::filesystem::path& path);

struct ChannelIngest {
  std::size_t accepted = 0;
  std::size_t dropped_missing = 0;     // empty field or sentinel value
  std::size_t dropped_unparseable = 0; // not a finite number
  std::size_t dropped_row = 0;         // bad or non-increasing timestamp

  std::size_t dropped() const noexcept { return dropped_missing + dropped_unparseable + dropped_row; }
};

struct IngestResult {
  std::vector<Signal> signals;  // one per mapped channel, in Channel order
  std::map<Channel, ChannelIngest> per_channel;
  std::size_t data_rows = 0;
  std::string sha256;  // hex digest of the input bytes
};

IngestResult ingest(const std::filesystem::path& path, const ColumnMapping& mapping);

std::string sha256_hex(const std::string& bytes);

}  // namespace ats
