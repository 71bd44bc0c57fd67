#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ats/error.hpp"
#include "ats/metrics.hpp"
#include "ats/pipeline.hpp"
#include "ats/synthetic.hpp"

namespace {

struct MethodFlags {
  std::string method = "dwt";
  int span = 9;
  std::string ma_mode = "centered";
  std::string wavelet = "coif5";
  std::string levels = "auto";
  ats::SiftConfig sift;
};

void add_method_flags(CLI::App* cmd, MethodFlags& f, bool with_method) {
  if (with_method) {
    cmd->add_option("--method", f.method, "Denoising method")
        ->check(CLI::IsMember({"ma", "dwt", "hht"}))
        ->capture_default_str();
  }
  cmd->add_option("--span", f.span, "Moving-average span")->capture_default_str();
  cmd->add_option("--ma-mode", f.ma_mode, "Moving-average alignment")
      ->check(CLI::IsMember({"centered", "causal"}))
      ->capture_default_str();
  cmd->add_option("--wavelet", f.wavelet, "Wavelet name, e.g. coif5, db4, sym8")->capture_default_str();
  cmd->add_option("--levels", f.levels, "Decomposition depth: auto or a positive integer")->capture_default_str();
  cmd->add_option("--emd-theta1", f.sift.theta1, "Sifting threshold theta1")->capture_default_str();
  cmd->add_option("--emd-theta2", f.sift.theta2, "Sifting threshold theta2")->capture_default_str();
  cmd->add_option("--emd-alpha", f.sift.alpha, "Sifting tolerance alpha")->capture_default_str();
  cmd->add_option("--max-siftings", f.sift.max_siftings, "Sifting iteration cap per IMF")->capture_default_str();
  cmd->add_option("--max-imfs", f.sift.max_imfs, "Maximum number of IMFs")->capture_default_str();
}

ats::MethodConfig to_config(const MethodFlags& f, ats::Method method) {
  ats::MethodConfig cfg;
  cfg.method = method;
  cfg.ma.span = f.span;
  cfg.ma.mode = *ats::ma_mode_from_string(f.ma_mode);
  cfg.wavelet = f.wavelet;
  if (f.levels != "auto") {
    std::size_t pos = 0;
    int j = 0;
    try {
      j = std::stoi(f.levels, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != f.levels.size() || j < 1) {
      throw ats::Error(ats::ErrorKind::configuration, "--levels must be 'auto' or a positive integer");
    }
    cfg.levels = j;
  }
  cfg.sift = f.sift;
  ats::validate(cfg);
  return cfg;
}

std::string join_warnings(const std::vector<std::string>& w) {
  std::string out;
  for (const auto& s : w) out += (out.empty() ? "" : "; ") + s;
  return out;
}

int run_denoise(const MethodFlags& flags, ats::PipelineConfig cfg, const std::string& map_path,
                const std::string& units) {
  cfg.method = to_config(flags, *ats::method_from_string(flags.method));
  cfg.mapping_path = map_path;
  cfg.mapping = ats::load_mapping(map_path);
  cfg.report_units = units == "celsius" ? ats::TemperatureUnit::celsius : ats::TemperatureUnit::kelvin;
  const auto manifest = ats::run_pipeline(cfg);

  std::size_t processed = 0, skipped = 0, failed = 0;
  for (const auto& o : manifest.outcomes) {
    switch (o.status) {
      case ats::SegmentStatus::processed: ++processed; break;
      case ats::SegmentStatus::skipped: ++skipped; break;
      case ats::SegmentStatus::failed:
        ++failed;
        std::cerr << "segment " << ats::to_string(o.channel) << " [" << o.start << ", " << o.end
                  << ") failed: " << o.reason << '\n';
        break;
    }
    if (!o.warnings.empty()) {
      std::cerr << "warning: " << ats::to_string(o.channel) << " [" << o.start << ", " << o.end
                << "): " << join_warnings(o.warnings) << '\n';
    }
  }
  std::cout << "segments: " << processed << " processed, " << skipped << " skipped, " << failed << " failed\n";
  std::cout << "samples: " << manifest.samples_in(ats::SegmentStatus::processed) << " processed, "
            << manifest.samples_in(ats::SegmentStatus::skipped) << " skipped, "
            << manifest.samples_in(ats::SegmentStatus::failed) << " failed\n";
  std::cout << "output: " << cfg.output_dir.string() << '\n';
  return 0;
}

struct BenchFlags {
  std::vector<std::string> methods{"ma", "dwt", "hht"};
  int repetitions = 5;
  std::size_t n = 86400;
  std::uint64_t seed = 1;
  std::size_t steps = 0;
  double sigma = 0.08;
  std::string input;
  std::string map;
  std::string channel;
  std::string report;
};

int run_bench(const MethodFlags& mflags, const BenchFlags& b) {
  std::vector<double> signal;
  std::string source;
  if (!b.input.empty()) {
    if (b.map.empty()) throw ats::Error(ats::ErrorKind::configuration, "--input needs --map");
    const auto mapping = ats::load_mapping(b.map);
    const auto ingested = ats::ingest(b.input, mapping);
    const ats::Signal* pick = &ingested.signals.front();
    if (!b.channel.empty()) {
      const auto ch = ats::channel_from_string(b.channel);
      if (!ch) throw ats::Error(ats::ErrorKind::configuration, "unknown channel '" + b.channel + "'");
      pick = nullptr;
      for (const auto& s : ingested.signals) {
        if (s.channel() == *ch) pick = &s;
      }
      if (!pick) throw ats::Error(ats::ErrorKind::configuration, "channel '" + b.channel + "' is not mapped");
    }
    // Longest gap-free run, so no method smooths across a session boundary.
    const auto parts = ats::segment(*pick);
    const ats::Segment* longest = nullptr;
    for (const auto& s : parts.segments) {
      if (!longest || s.size() > longest->size()) longest = &s;
    }
    if (!longest) throw ats::Error(ats::ErrorKind::input_too_short, "no segment long enough to benchmark");
    signal = longest->samples;
    source = b.input + ":" + std::string(ats::to_string(pick->channel())) + "[" + std::to_string(longest->start) +
             "," + std::to_string(longest->end) + ")";
  } else {
    ats::SyntheticSpec spec;
    spec.n = b.n;
    spec.seed = b.seed;
    spec.steps = b.steps;
    spec.noise_sigma = b.sigma;
    signal = ats::make_synthetic(spec).noisy;
    source = "synthetic";
  }

  std::vector<ats::MethodConfig> configs;
  for (const auto& m : b.methods) configs.push_back(to_config(mflags, *ats::method_from_string(m)));
  const auto reports = ats::run_benchmark(configs, signal, b.repetitions);

  std::ofstream report;
  if (!b.report.empty()) {
    report.open(b.report, std::ios::binary | std::ios::trunc);
    if (!report) throw ats::Error(ats::ErrorKind::io, "cannot write " + b.report);
  }
  std::cout << "method\tn\tprd_percent\tresidual_sigma_K\ttime_s\tconfig\n";
  for (const auto& r : reports) {
    std::cout << ats::to_string(r.method) << '\t' << r.n_samples << '\t' << ats::format_number(r.prd) << '\t'
              << ats::format_number(r.residual_sigma) << '\t' << ats::format_number(r.elapsed) << '\t' << r.config
              << '\n';
    if (report) {
      nlohmann::json j{{"method", ats::to_string(r.method)}, {"dataset", source},      {"prd", r.prd},
                       {"residual_sigma", r.residual_sigma}, {"n_samples", r.n_samples}, {"elapsed", r.elapsed},
                       {"repetitions", b.repetitions},      {"config", r.config}};
      report << j.dump() << '\n';
    }
  }
  return 0;
}

// Sample-weighted mean residual sigma per method over the processed records
// of a report stream.
std::map<ats::Method, double> read_sigmas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ats::Error(ats::ErrorKind::io, "cannot read " + path);
  std::map<ats::Method, std::pair<double, double>> acc;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ats::Error(ats::ErrorKind::configuration, path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.contains("residual_sigma") || !j.contains("method")) continue;
    const auto method = ats::method_from_string(j["method"].get<std::string>());
    if (!method) throw ats::Error(ats::ErrorKind::configuration, path + ":" + std::to_string(lineno) + ": unknown method");
    const double w = j.value("n_samples", 1.0);
    acc[*method].first += w * j["residual_sigma"].get<double>();
    acc[*method].second += w;
  }
  std::map<ats::Method, double> out;
  for (const auto& [m, s] : acc) {
    if (s.second > 0) out[m] = s.first / s.second;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Denoising of ATS air-temperature telemetry (moving average, wavelet, EMD)"};
  app.set_version_flag("--version", std::string(ats::kVersion));
  app.require_subcommand(1);

  MethodFlags dflags;
  ats::PipelineConfig pcfg;
  std::string input, map_path, out_dir, report_path, units = "kelvin";
  auto* den = app.add_subcommand("denoise", "Denoise every mapped channel of a telemetry table");
  add_method_flags(den, dflags, true);
  den->add_option("--input", input, "Delimited telemetry table")->required()->check(CLI::ExistingFile);
  den->add_option("--map", map_path, "Column mapping file")->required()->check(CLI::ExistingFile);
  den->add_option("--out", out_dir, "Output directory")->required();
  den->add_option("--report", report_path, "Write one JSON record per segment to this path");
  den->add_flag("--plot", pcfg.plot, "Write an SVG overlay per channel");
  den->add_option("--gap-threshold", pcfg.gap_threshold, "Split segments where the time step exceeds this (s)")
      ->capture_default_str();
  den->add_option("--min-segment", pcfg.min_segment_len, "Shortest run that is denoised")->capture_default_str();
  den->add_option("--units", units, "Units for reported metrics")
      ->check(CLI::IsMember({"kelvin", "celsius"}))
      ->capture_default_str();
  den->add_option("--jobs", pcfg.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  MethodFlags bflags;
  BenchFlags bench;
  auto* ben = app.add_subcommand("bench", "Time the methods on one series");
  add_method_flags(ben, bflags, false);
  ben->add_option("--methods", bench.methods, "Methods to compare")
      ->check(CLI::IsMember({"ma", "dwt", "hht"}))
      ->capture_default_str();
  ben->add_option("--repetitions", bench.repetitions, "Timed repetitions (>= 3)")->capture_default_str();
  ben->add_option("--n", bench.n, "Synthetic signal length")->capture_default_str();
  ben->add_option("--seed", bench.seed, "Synthetic signal seed")->capture_default_str();
  ben->add_option("--steps", bench.steps, "Level shifts in the synthetic signal")->capture_default_str();
  ben->add_option("--sigma", bench.sigma, "Synthetic noise sigma (K)")->capture_default_str();
  ben->add_option("--input", bench.input, "Benchmark the longest segment of a channel of this table instead")->check(CLI::ExistingFile);
  ben->add_option("--map", bench.map, "Column mapping for --input")->check(CLI::ExistingFile);
  ben->add_option("--channel", bench.channel, "Channel to benchmark (default: first mapped)");
  ben->add_option("--report", bench.report, "Write one JSON record per method to this path");

  std::string clean_path, perturbed_path;
  double ratio = ats::kDefaultFlagRatio;
  auto* cmp = app.add_subcommand("compare", "Compare residual sigma on clean and perturbed report streams");
  cmp->add_option("--clean", clean_path, "Report stream from reference data")->required()->check(CLI::ExistingFile);
  cmp->add_option("--perturbed", perturbed_path, "Report stream from perturbed data")
      ->required()
      ->check(CLI::ExistingFile);
  cmp->add_option("--ratio", ratio, "Flag when perturbed/clean exceeds this")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*den) {
      pcfg.input = input;
      pcfg.output_dir = out_dir;
      if (!report_path.empty()) pcfg.report_path = report_path;
      return run_denoise(dflags, pcfg, map_path, units);
    }
    if (*ben) return run_bench(bflags, bench);
    if (*cmp) {
      const auto table = ats::compare_against_reference(read_sigmas(clean_path), read_sigmas(perturbed_path), ratio);
      std::cout << table.render();
      return 0;
    }
  } catch (const ats::Error& e) {
    std::cerr << "error (" << ats::to_string(e.kind()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
