#include "ats/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "ats/error.hpp"

namespace ats {

namespace {

constexpr int kWidth = 960;
constexpr int kPanelHeight = 260;
constexpr int kMargin = 50;
constexpr std::size_t kMaxColumns = 1500;

struct Box {
  double x0, y0, w, h;
  double lo, hi;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::pair<double, double> range_of(std::initializer_list<std::span<const double>> series) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (auto s : series) {
    for (double v : s) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return {lo, hi};
}

// Index/value pairs to draw; min and max of each column bucket in order.
std::vector<std::pair<std::size_t, double>> reduce(std::span<const double> s) {
  std::vector<std::pair<std::size_t, double>> pts;
  const std::size_t n = s.size();
  if (n <= 2 * kMaxColumns) {
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(i, s[i]);
    return pts;
  }
  for (std::size_t c = 0; c < kMaxColumns; ++c) {
    const std::size_t a = c * n / kMaxColumns;
    const std::size_t b = (c + 1) * n / kMaxColumns;
    const auto [mn, mx] = std::minmax_element(s.begin() + a, s.begin() + b);
    const auto i_mn = static_cast<std::size_t>(mn - s.begin());
    const auto i_mx = static_cast<std::size_t>(mx - s.begin());
    if (i_mn < i_mx) {
      pts.emplace_back(i_mn, *mn);
      pts.emplace_back(i_mx, *mx);
    } else {
      pts.emplace_back(i_mx, *mx);
      pts.emplace_back(i_mn, *mn);
    }
  }
  return pts;
}

void polyline(std::ostream& os, std::span<const double> s, const Box& box, const char* color,
              const char* extra = "") {
  const double span_x = s.size() > 1 ? static_cast<double>(s.size() - 1) : 1.0;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\"" << extra << " points=\"";
  for (const auto& [i, v] : reduce(s)) {
    const double px = box.x0 + box.w * static_cast<double>(i) / span_x;
    const double py = box.y0 + box.h * (1.0 - (v - box.lo) / (box.hi - box.lo));
    os << px << ',' << py << ' ';
  }
  os << "\"/>\n";
}

void frame(std::ostream& os, const Box& box, const char* label) {
  os << "<rect x=\"" << box.x0 << "\" y=\"" << box.y0 << "\" width=\"" << box.w << "\" height=\"" << box.h
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << box.x0 - 6 << "\" y=\"" << box.y0 + 10 << "\" font-size=\"10\" text-anchor=\"end\">"
     << box.hi << "</text>\n";
  os << "<text x=\"" << box.x0 - 6 << "\" y=\"" << box.y0 + box.h << "\" font-size=\"10\" text-anchor=\"end\">"
     << box.lo << "</text>\n";
  os << "<text x=\"" << box.x0 + 4 << "\" y=\"" << box.y0 + 14 << "\" font-size=\"11\">" << label << "</text>\n";
}

}  // namespace

bool emit_plot(std::span<const double> x, std::span<const double> y, std::span<const double> epsilon,
               const std::filesystem::path& path, const std::string& title) {
  if (x.size() != y.size() || x.size() != epsilon.size()) {
    throw Error(ErrorKind::alignment, "plot series differ in length");
  }
  if (x.empty()) return false;

  std::ostringstream os;
  os.precision(6);
  const int height = 2 * kPanelHeight + 3 * kMargin;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << kWidth << ' ' << height << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" << escape(title)
       << "</text>\n";
  }

  const double w = kWidth - 2 * kMargin;
  const auto [lo, hi] = range_of({x, y});
  const Box top{static_cast<double>(kMargin), static_cast<double>(kMargin), w, kPanelHeight, lo, hi};
  const auto [elo, ehi] = range_of({epsilon});
  const Box bottom{static_cast<double>(kMargin), static_cast<double>(2 * kMargin + kPanelHeight), w,
                   kPanelHeight, elo, ehi};

  frame(os, top, "temperature (K)");
  polyline(os, x, top, "#1f77b4", " stroke-dasharray=\"2,2\"");
  polyline(os, y, top, "#2ca02c");
  frame(os, bottom, "residual (K)");
  polyline(os, epsilon, bottom, "#d62728");

  const double lx = kWidth - kMargin - 150;
  const double ly = kMargin + 10;
  const char* names[] = {"raw", "denoised", "residual"};
  const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728"};
  os << "<g font-size=\"11\">\n";
  for (int i = 0; i < 3; ++i) {
    const double row = ly + 16 * i;
    os << "<line x1=\"" << lx << "\" y1=\"" << row << "\" x2=\"" << lx + 24 << "\" y2=\"" << row
       << "\" stroke=\"" << colors[i] << "\" stroke-width=\"2\"/>"
       << "<text x=\"" << lx + 30 << "\" y=\"" << row + 4 << "\">" << names[i] << "</text>\n";
  }
  os << "</g>\n</svg>\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write plot " + path.string());
  out << os.str();
  if (!out) throw Error(ErrorKind::io, "failed writing plot " + path.string());
  return true;
}

}  // namespace ats
