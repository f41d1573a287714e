#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "szego/cli.hpp"

namespace szego::cli {

namespace {

constexpr double kWidth = 720.0, kHeight = 420.0, kMargin = 48.0;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::vector<double>& x,
                     const std::vector<PlotSeries>& series) {
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (double v : x) xlo = std::min(xlo, v), xhi = std::max(xhi, v);
  for (const auto& s : series)
    for (double v : s.y)
      if (std::isfinite(v)) ylo = std::min(ylo, v), yhi = std::max(yhi, v);
  if (!(xlo < xhi)) xlo -= 1.0, xhi += 1.0;
  if (!(ylo < yhi)) ylo -= 1.0, yhi += 1.0;
  const double pw = kWidth - 2 * kMargin, ph = kHeight - 2 * kMargin;
  auto sx = [&](double v) { return kMargin + (v - xlo) / (xhi - xlo) * pw; };
  auto sy = [&](double v) { return kHeight - kMargin - (v - ylo) / (yhi - ylo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"13\">" << escape(title) << "</text>\n"
     << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 14 << "\">" << label(xlo) << "</text>\n"
     << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 14
     << "\" text-anchor=\"end\">" << label(xhi) << "</text>\n"
     << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
     << label(ylo) << "</text>\n"
     << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">" << label(yhi)
     << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const std::size_t n = std::min(x.size(), series[k].y.size());
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      os << (first ? "" : " ") << num(sx(x[i])) << "," << num(sy(series[k].y[i]));
      first = false;
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 14 + 14 * k
       << "\" text-anchor=\"end\" fill=\"" << color << "\">" << escape(series[k].label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace szego::cli
