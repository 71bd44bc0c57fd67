#include "ats/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ats/error.hpp"

namespace ats {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long> parse_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw Error(ErrorKind::configuration, "mapping key '" + std::string(key) + "' expects true/false");
}

std::vector<std::string> split(std::string_view line, Delimiter delim) {
  std::vector<std::string> out;
  if (delim == Delimiter::comma) {
    std::size_t start = 0;
    while (true) {
      const auto pos = line.find(',', start);
      out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    std::istringstream is{std::string(line)};
    std::string field;
    while (is >> field) out.push_back(field);
  }
  return out;
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

class SentinelSet {
 public:
  explicit SentinelSet(const std::vector<std::string>& literals) {
    for (const auto& s : literals) {
      literals_.push_back(s);
      if (auto v = parse_double(s)) values_.push_back(*v);
    }
  }

  bool missing(std::string_view field) const {
    if (field.empty()) return true;
    if (std::find(literals_.begin(), literals_.end(), field) != literals_.end()) return true;
    if (values_.empty()) return false;
    const auto v = parse_double(field);
    return v && std::find(values_.begin(), values_.end(), *v) != values_.end();
  }

 private:
  std::vector<std::string> literals_;
  std::vector<double> values_;
};

std::size_t resolve_column(const std::string& ref, const std::vector<std::string>& header,
                           bool has_header) {
  if (has_header) {
    const auto it = std::find(header.begin(), header.end(), ref);
    if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  }
  if (const auto idx = parse_long(ref); idx && *idx >= 0) return static_cast<std::size_t>(*idx);
  throw Error(ErrorKind::configuration, "mapped column '" + ref + "' not found in the input header");
}

}  // namespace

ColumnMapping parse_mapping(std::istream& in) {
  ColumnMapping m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::configuration, "mapping line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key(trim(std::string_view(line).substr(0, eq)));
    const std::string value(trim(std::string_view(line).substr(eq + 1)));
    if (key == "header") {
      m.header = parse_bool(key, value);
    } else if (key == "delimiter") {
      if (value == "auto") {
        m.delimiter = Delimiter::automatic;
      } else if (value == "comma") {
        m.delimiter = Delimiter::comma;
      } else if (value == "whitespace") {
        m.delimiter = Delimiter::whitespace;
      } else {
        throw Error(ErrorKind::configuration, "unknown delimiter '" + value + "'");
      }
    } else if (key == "timestamp") {
      m.timestamp = value;
    } else if (key == "timestamp_scale") {
      const auto v = parse_double(value);
      if (!v || !(*v > 0.0)) throw Error(ErrorKind::configuration, "timestamp_scale must be positive");
      m.timestamp_scale = *v;
    } else if (key == "sentinel") {
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = trim(rest.substr(0, comma));
        if (!item.empty()) m.sentinels.emplace_back(item);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    } else if (key == "sol") {
      const auto v = parse_long(value);
      if (!v) throw Error(ErrorKind::configuration, "sol must be an integer");
      m.sol = static_cast<int>(*v);
    } else if (key.rfind("channel.", 0) == 0) {
      const auto k = parse_long(std::string_view(key).substr(8));
      const auto ch = k ? channel_from_index(static_cast<int>(*k)) : std::nullopt;
      if (!ch) throw Error(ErrorKind::configuration, "channel index must be 1..6 in '" + key + "'");
      m.channels[*ch] = value;
    } else if (key == "boom1_ambient") {
      m.channels[Channel::boom1_ambient] = value;
    } else if (key == "boom2_ambient") {
      m.channels[Channel::boom2_ambient] = value;
    } else {
      throw Error(ErrorKind::configuration, "unknown mapping key '" + key + "'");
    }
  }
  if (m.timestamp.empty()) throw Error(ErrorKind::configuration, "mapping has no timestamp column");
  if (m.channels.empty()) throw Error(ErrorKind::configuration, "mapping has no channel columns");
  return m;
}

ColumnMapping load_mapping(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open mapping file " + path.string());
  return parse_mapping(in);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::io, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

IngestResult ingest(const std::filesystem::path& path, const ColumnMapping& mapping) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::io, "cannot open input file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::string bytes = buffer.str();

  IngestResult result;
  result.sha256 = sha256_hex(bytes);

  std::istringstream in(bytes);
  std::string line;
  Delimiter delim = mapping.delimiter;
  std::vector<std::string> header;
  bool header_pending = mapping.header;
  bool columns_resolved = false;
  std::size_t ts_col = 0;
  std::vector<std::pair<Channel, std::size_t>> cols;
  const SentinelSet sentinels(mapping.sentinels);

  struct Acc {
    std::vector<double> t;
    std::vector<double> x;
  };
  std::map<Channel, Acc> acc;
  for (const auto& [ch, ref] : mapping.channels) {
    acc[ch];
    result.per_channel[ch];
  }
  std::optional<double> last_ts;

  auto resolve = [&](std::size_t width) {
    ts_col = resolve_column(mapping.timestamp, header, mapping.header);
    for (const auto& [ch, ref] : mapping.channels) cols.emplace_back(ch, resolve_column(ref, header, mapping.header));
    std::size_t widest = ts_col;
    for (const auto& c : cols) widest = std::max(widest, c.second);
    if (widest >= width) {
      throw Error(ErrorKind::configuration, "mapping references column " + std::to_string(widest) +
                                                " but the table has " + std::to_string(width));
    }
    columns_resolved = true;
  };

  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    if (delim == Delimiter::automatic) {
      delim = line.find(',') != std::string::npos ? Delimiter::comma : Delimiter::whitespace;
    }
    auto fields = split(line, delim);
    if (header_pending) {
      header = std::move(fields);
      header_pending = false;
      resolve(header.size());
      continue;
    }
    if (!columns_resolved) resolve(fields.size());
    ++result.data_rows;

    const auto drop_row = [&] {
      for (auto& [ch, stats] : result.per_channel) ++stats.dropped_row;
    };
    if (ts_col >= fields.size() || sentinels.missing(fields[ts_col])) {
      drop_row();
      continue;
    }
    const auto raw_ts = parse_double(fields[ts_col]);
    if (!raw_ts || !std::isfinite(*raw_ts)) {
      drop_row();
      continue;
    }
    const double ts = *raw_ts * mapping.timestamp_scale;
    if (last_ts && !(ts > *last_ts)) {
      drop_row();
      continue;
    }
    last_ts = ts;

    for (const auto& [ch, col] : cols) {
      auto& stats = result.per_channel[ch];
      if (col >= fields.size() || sentinels.missing(fields[col])) {
        ++stats.dropped_missing;
        continue;
      }
      const auto v = parse_double(fields[col]);
      if (!v || !std::isfinite(*v)) {
        ++stats.dropped_unparseable;
        continue;
      }
      acc[ch].t.push_back(ts);
      acc[ch].x.push_back(*v);
      ++stats.accepted;
    }
  }

  if (mapping.header && header_pending) throw Error(ErrorKind::io, "input file has no header line");
  for (auto& [ch, a] : acc) {
    if (a.x.empty()) {
      throw Error(ErrorKind::empty_input, "channel " + std::string(to_string(ch)) + " has no valid rows in " +
                                     path.string());
    }
    result.signals.emplace_back(ch, std::move(a.t), std::move(a.x), mapping.sol);
  }
  return result;
}

}  // namespace ats
