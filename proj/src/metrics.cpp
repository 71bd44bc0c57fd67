#include "ats/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "ats/error.hpp"

namespace ats {

double prd(std::span<const double> x, std::span<const double> y_hat) {
  if (x.size() != y_hat.size()) throw Error(ErrorKind::alignment, "PRD operands differ in length");
  if (x.empty()) throw Error(ErrorKind::empty_input, "PRD of empty series");
  double diff = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y_hat[i];
    diff += d * d;
    energy += x[i] * x[i];
  }
  if (energy == 0.0) throw Error(ErrorKind::zero_energy, "PRD reference has zero energy");
  return 100.0 * std::sqrt(diff / energy);
}

double residual_sigma(std::span<const double> epsilon) {
  if (epsilon.size() < 2) throw Error(ErrorKind::input_too_short, "sigma needs at least 2 samples");
  double mean = 0.0;
  for (double v : epsilon) mean += v;
  mean /= static_cast<double>(epsilon.size());
  double ss = 0.0;
  for (double v : epsilon) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(epsilon.size() - 1));
}

MetricsReport make_report(std::span<const double> x, const DenoiseResult& r, const MethodConfig& cfg,
                          double elapsed) {
  MetricsReport rep;
  rep.method = cfg.method;
  rep.prd = prd(x, r.denoised);
  rep.residual_sigma = residual_sigma(r.residual);
  rep.n_samples = x.size();
  rep.elapsed = elapsed;
  rep.config = describe(cfg);
  return rep;
}

std::vector<MetricsReport> run_benchmark(std::span<const MethodConfig> methods,
                                         std::span<const double> signal, int repetitions) {
  if (repetitions < 3) throw Error(ErrorKind::invalid_argument, "benchmark needs >= 3 repetitions");
  using clock = std::chrono::steady_clock;
  std::vector<MetricsReport> out;
  for (const auto& cfg : methods) {
    const DenoiseResult reference = denoise(signal, cfg);
    std::vector<double> times;
    for (int rep = 0; rep < repetitions; ++rep) {
      const auto t0 = clock::now();
      const DenoiseResult r = denoise(signal, cfg);
      const auto t1 = clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
      if (r.denoised.empty()) throw Error(ErrorKind::empty_input, "denoiser produced no output");
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    const double median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    out.push_back(make_report(signal, reference, cfg, median));
  }
  return out;
}

std::string ReferenceComparison::render() const {
  std::ostringstream os;
  os.precision(6);
  os << "method\tsigma_clean\tsigma_perturbed\tratio\tflagged\n";
  for (const auto& row : rows) {
    os << to_string(row.method) << '\t' << row.clean_sigma << '\t' << row.perturbed_sigma << '\t'
       << row.ratio << '\t' << (row.flagged ? "yes" : "no") << '\n';
  }
  return os.str();
}

ReferenceComparison compare_against_reference(const std::map<Method, double>& clean,
                                              const std::map<Method, double>& perturbed,
                                              double flag_ratio) {
  // relative slack so that "exactly 50% higher" is not flagged by rounding
  constexpr double kSlack = 1e-12;
  ReferenceComparison cmp;
  for (const auto& [method, clean_sigma] : clean) {
    const auto it = perturbed.find(method);
    if (it == perturbed.end()) continue;
    ComparisonRow row;
    row.method = method;
    row.clean_sigma = clean_sigma;
    row.perturbed_sigma = it->second;
    row.ratio = clean_sigma > 0.0 ? it->second / clean_sigma : (it->second > 0.0 ? INFINITY : 1.0);
    row.flagged = it->second > clean_sigma * flag_ratio * (1.0 + kSlack);
    cmp.rows.push_back(row);
  }
  return cmp;
}

}  // namespace ats
