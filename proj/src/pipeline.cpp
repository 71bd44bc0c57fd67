#include "ats/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <thread>

#include "ats/error.hpp"
#include "ats/svg_plot.hpp"

namespace ats {

namespace {

constexpr double kKelvinToCelsius = 273.15;

std::string_view to_string(SegmentStatus s) {
  switch (s) {
    case SegmentStatus::processed: return "processed";
    case SegmentStatus::skipped: return "skipped";
    case SegmentStatus::failed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(TemperatureUnit u) { return u == TemperatureUnit::kelvin ? "kelvin" : "celsius"; }

struct Task {
  const Segment* segment = nullptr;
  std::size_t outcome = 0;
};

struct SegmentResult {
  DenoiseResult result;
  double elapsed = 0.0;
};

class Writer {
 public:
  Writer(const std::filesystem::path& dir, std::string name, RunManifest& manifest)
      : path_(dir / name), out_(path_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(ErrorKind::io, "cannot write " + path_.string());
    manifest.outputs.push_back(std::move(name));
  }

  ~Writer() { out_.flush(); }

  template <typename... Cols>
  void row(const Cols&... cols) {
    std::size_t i = 0;
    ((out_ << (i++ ? "\t" : "") << cols), ...);
    out_ << '\n';
    if (!out_) throw Error(ErrorKind::io, "failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

nlohmann::json config_echo(const PipelineConfig& cfg) {
  nlohmann::json j;
  j["method"] = to_string(cfg.method.method);
  j["method_config"] = describe(cfg.method);
  j["input"] = cfg.input.string();
  j["mapping"] = cfg.mapping_path.string();
  j["gap_threshold"] = cfg.gap_threshold;
  j["min_segment_len"] = cfg.min_segment_len;
  j["output_dir"] = cfg.output_dir.string();
  j["plot"] = cfg.plot;
  j["report_units"] = to_string(cfg.report_units);
  nlohmann::json cols = nlohmann::json::object();
  cols["timestamp"] = cfg.mapping.timestamp;
  for (const auto& [ch, ref] : cfg.mapping.channels) cols[std::string(to_string(ch))] = ref;
  j["columns"] = cols;
  return j;
}

nlohmann::json metrics_json(const MetricsReport& m, bool include_timing) {
  nlohmann::json j;
  j["method"] = to_string(m.method);
  j["prd"] = m.prd;
  j["residual_sigma"] = m.residual_sigma;
  j["n_samples"] = m.n_samples;
  if (include_timing) j["elapsed"] = m.elapsed;
  j["config"] = m.config;
  return j;
}

std::vector<double> to_unit(std::span<const double> kelvin, TemperatureUnit unit) {
  std::vector<double> out(kelvin.begin(), kelvin.end());
  if (unit == TemperatureUnit::celsius) {
    for (double& v : out) v -= kKelvinToCelsius;
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string denoised_file_name(Channel c, Method m) {
  return std::string(to_string(c)) + "_" + std::string(to_string(m)) + "_denoised.tsv";
}
std::string residual_file_name(Channel c, Method m) {
  return std::string(to_string(c)) + "_" + std::string(to_string(m)) + "_residual.tsv";
}
std::string report_file_name(Channel c, Method m) {
  return std::string(to_string(c)) + "_" + std::string(to_string(m)) + "_report.tsv";
}
std::string plot_file_name(Channel c, Method m) {
  return std::string(to_string(c)) + "_" + std::string(to_string(m)) + ".svg";
}
std::string combined_file_name(Method m) { return "combined_min_" + std::string(to_string(m)) + ".tsv"; }

std::size_t RunManifest::samples_in(SegmentStatus status) const {
  std::size_t total = 0;
  for (const auto& o : outcomes) {
    if (o.status == status) total += o.end - o.start;
  }
  return total;
}

nlohmann::json to_json(const RunManifest& m, bool include_timing) {
  nlohmann::json j;
  j["version"] = m.version;
  j["config"] = m.config;
  j["input_sha256"] = m.input_sha256;
  j["data_rows"] = m.data_rows;
  nlohmann::json ing = nlohmann::json::object();
  for (const auto& [ch, s] : m.ingest) {
    ing[std::string(to_string(ch))] = {{"accepted", s.accepted},
                                       {"dropped_missing", s.dropped_missing},
                                       {"dropped_unparseable", s.dropped_unparseable},
                                       {"dropped_row", s.dropped_row}};
  }
  j["ingest"] = ing;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& o : m.outcomes) {
    nlohmann::json s;
    s["channel"] = to_string(o.channel);
    s["start"] = o.start;
    s["end"] = o.end;
    s["samples"] = o.end - o.start;
    s["t_start"] = o.t_start;
    s["t_end"] = o.t_end;
    s["status"] = to_string(o.status);
    if (!o.reason.empty()) s["reason"] = o.reason;
    if (o.metrics) s["metrics"] = metrics_json(*o.metrics, include_timing);
    if (!o.warnings.empty()) s["warnings"] = o.warnings;
    segs.push_back(std::move(s));
  }
  j["segments"] = segs;
  j["samples_processed"] = m.samples_in(SegmentStatus::processed);
  j["samples_skipped"] = m.samples_in(SegmentStatus::skipped);
  j["samples_failed"] = m.samples_in(SegmentStatus::failed);
  j["outputs"] = m.outputs;
  j["notes"] = m.notes;
  return j;
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
  validate(cfg.method);
  if (!(cfg.gap_threshold > 0.0)) throw Error(ErrorKind::configuration, "gap threshold must be positive");
  if (cfg.min_segment_len < 1) throw Error(ErrorKind::configuration, "minimum segment length must be >= 1");

  IngestResult ingested = ingest(cfg.input, cfg.mapping);
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create output directory " + cfg.output_dir.string());

  RunManifest manifest;
  manifest.config = config_echo(cfg);
  manifest.input_sha256 = ingested.sha256;
  manifest.data_rows = ingested.data_rows;
  manifest.ingest = ingested.per_channel;

  // Segment every channel, then lay out one outcome per segment or skipped run
  // in time order.
  std::vector<Segmentation> parts;
  std::vector<Task> tasks;
  parts.reserve(ingested.signals.size());
  for (const auto& sig : ingested.signals) {
    parts.push_back(segment(sig, cfg.gap_threshold, cfg.min_segment_len));
  }
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto& sig = ingested.signals[c];
    const auto ts = sig.timestamps();
    std::vector<SegmentOutcome> local;
    for (const auto& seg : parts[c].segments) {
      SegmentOutcome o{sig.channel(), seg.start, seg.end, ts[seg.start], ts[seg.end - 1],
                       SegmentStatus::processed, {}, std::nullopt, {}};
      local.push_back(std::move(o));
    }
    for (const auto& run : parts[c].skipped) {
      local.push_back({sig.channel(), run.start, run.end, ts[run.start], ts[run.end - 1],
                       SegmentStatus::skipped, run.reason, std::nullopt, {}});
    }
    std::sort(local.begin(), local.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
    const std::size_t base = manifest.outcomes.size();
    for (std::size_t i = 0; i < local.size(); ++i) {
      if (local[i].status != SegmentStatus::processed) continue;
      const auto it = std::find_if(parts[c].segments.begin(), parts[c].segments.end(),
                                   [&](const Segment& s) { return s.start == local[i].start; });
      tasks.push_back({&*it, base + i});
    }
    manifest.outcomes.insert(manifest.outcomes.end(), local.begin(), local.end());
  }

  // Each task writes only its own slot, so output order does not depend on
  // scheduling.
  std::vector<std::optional<SegmentResult>> results(manifest.outcomes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      auto& outcome = manifest.outcomes[task.outcome];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        DenoiseResult r = denoise(task.segment->samples, cfg.method);
        const auto t1 = std::chrono::steady_clock::now();
        const double elapsed = std::max(std::chrono::duration<double>(t1 - t0).count(), 1e-9);
        const auto x_unit = to_unit(task.segment->samples, cfg.report_units);
        const auto y_unit = to_unit(r.denoised, cfg.report_units);
        MetricsReport rep;
        rep.method = cfg.method.method;
        rep.prd = prd(x_unit, y_unit);
        rep.residual_sigma = residual_sigma(r.residual);
        rep.n_samples = r.denoised.size();
        rep.elapsed = elapsed;
        rep.config = describe(cfg.method);
        outcome.metrics = rep;
        outcome.warnings = r.warnings;
        results[task.outcome] = SegmentResult{std::move(r), elapsed};
      } catch (const Error& e) {
        outcome.status = SegmentStatus::failed;
        outcome.reason = std::string(to_string(e.kind())) + ": " + e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }

  const Method method = cfg.method.method;
  std::map<Channel, std::vector<std::pair<double, double>>> denoised_by_time;
  std::ofstream report_stream;
  if (cfg.report_path) {
    report_stream.open(*cfg.report_path, std::ios::binary | std::ios::trunc);
    if (!report_stream) throw Error(ErrorKind::io, "cannot write report " + cfg.report_path->string());
  }

  for (std::size_t c = 0; c < ingested.signals.size(); ++c) {
    const auto& sig = ingested.signals[c];
    const Channel ch = sig.channel();
    const auto ts = sig.timestamps();
    const auto xs = sig.samples();
    Writer den(cfg.output_dir, denoised_file_name(ch, method), manifest);
    Writer res(cfg.output_dir, residual_file_name(ch, method), manifest);
    Writer rep(cfg.output_dir, report_file_name(ch, method), manifest);
    den.row("timestamp", "raw", "denoised", "residual");
    res.row("timestamp", "residual");
    rep.row("start", "end", "samples", "t_start", "t_end", "status", "prd", "residual_sigma", "elapsed", "units");

    std::vector<double> plot_x, plot_y, plot_e;
    for (std::size_t o = 0; o < manifest.outcomes.size(); ++o) {
      const auto& out = manifest.outcomes[o];
      if (out.channel != ch) continue;
      const std::string n = std::to_string(out.end - out.start);
      if (out.status != SegmentStatus::processed || !results[o]) {
        rep.row(out.start, out.end, n, format_number(out.t_start), format_number(out.t_end), to_string(out.status),
                "", "", "", to_string(cfg.report_units));
        if (report_stream && out.status == SegmentStatus::failed) {
          nlohmann::json j{{"channel", to_string(ch)}, {"method", to_string(method)}, {"start", out.start},
                           {"end", out.end}, {"status", "failed"}, {"reason", out.reason}};
          report_stream << j.dump() << '\n';
        }
        continue;
      }
      const auto& r = results[o]->result;
      for (std::size_t i = 0; i < r.denoised.size(); ++i) {
        const std::size_t k = out.start + i;
        den.row(format_number(ts[k]), format_number(xs[k]), format_number(r.denoised[i]),
                format_number(r.residual[i]));
        res.row(format_number(ts[k]), format_number(r.residual[i]));
        denoised_by_time[ch].emplace_back(ts[k], r.denoised[i]);
      }
      const auto& m = *out.metrics;
      rep.row(out.start, out.end, n, format_number(out.t_start), format_number(out.t_end), to_string(out.status),
              format_number(m.prd), format_number(m.residual_sigma), format_number(m.elapsed),
              to_string(cfg.report_units));
      if (report_stream) {
        nlohmann::json j = metrics_json(m, true);
        j["channel"] = to_string(ch);
        j["start"] = out.start;
        j["end"] = out.end;
        j["status"] = "processed";
        j["units"] = to_string(cfg.report_units);
        j["sigmas"] = r.sigmas;
        j["thresholds"] = r.thresholds;
        report_stream << j.dump() << '\n';
      }
      if (cfg.plot) {
        plot_x.insert(plot_x.end(), xs.begin() + static_cast<std::ptrdiff_t>(out.start),
                      xs.begin() + static_cast<std::ptrdiff_t>(out.end));
        plot_y.insert(plot_y.end(), r.denoised.begin(), r.denoised.end());
        plot_e.insert(plot_e.end(), r.residual.begin(), r.residual.end());
      }
    }
    if (cfg.plot) {
      const auto name = plot_file_name(ch, method);
      const std::string title = std::string(to_string(ch)) + " - " + describe(cfg.method);
      if (emit_plot(plot_x, plot_y, plot_e, cfg.output_dir / name, title)) {
        manifest.outputs.push_back(name);
      } else {
        manifest.notes.push_back("no processed samples for " + std::string(to_string(ch)) + "; plot skipped");
      }
    }
  }

  // Minimum of the two boom ambient estimates at the timestamps both share.
  if (cfg.mapping.channels.contains(Channel::boom1_ambient) && cfg.mapping.channels.contains(Channel::boom2_ambient)) {
    const auto& b1 = denoised_by_time[Channel::boom1_ambient];
    const auto& b2 = denoised_by_time[Channel::boom2_ambient];
    BoomTemperaturePair pair;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < b1.size() && j < b2.size()) {
      if (b1[i].first < b2[j].first) {
        ++i;
      } else if (b2[j].first < b1[i].first) {
        ++j;
      } else {
        pair.timestamps.push_back(b1[i].first);
        pair.t1.push_back(b1[i].second);
        pair.t2.push_back(b2[j].second);
        ++i;
        ++j;
      }
    }
    const auto combined = min_combine(pair);
    Writer w(cfg.output_dir, combined_file_name(method), manifest);
    w.row("timestamp", "boom1", "boom2", "min");
    for (std::size_t k = 0; k < combined.size(); ++k) {
      w.row(format_number(pair.timestamps[k]), format_number(pair.t1[k]), format_number(pair.t2[k]),
            format_number(combined[k]));
    }
    if (combined.empty()) manifest.notes.push_back("boom ambient channels share no processed timestamps");
  }

  manifest.outputs.push_back(kManifestFileName);
  std::ofstream mf(cfg.output_dir / kManifestFileName, std::ios::binary | std::ios::trunc);
  if (!mf) throw Error(ErrorKind::io, "cannot write manifest");
  mf << to_json(manifest).dump(2) << '\n';
  return manifest;
}

}  // namespace ats
