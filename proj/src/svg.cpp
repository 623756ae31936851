#include "slabdiff/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace slabdiff {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char *, 5> kColours = {"#1f77b4", "#d62728",
                                                  "#2ca02c", "#9467bd",
                                                  "#ff7f0e"};

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

} // namespace

std::string render_svg(const std::string &title, const std::string &x_label,
                       const std::string &y_label,
                       const std::vector<SvgSeries> &series,
                       const std::vector<double> &guides) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto &s : series) {
    for (double x : s.x) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
    for (double y : s.y) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin)) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  const auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
     << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    os << "<text x=\"" << px(fx) << "\" y=\"" << kHeight - kBottom + 16
       << "\" text-anchor=\"middle\">" << fx << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(fy) + 4
       << "\" text-anchor=\"end\">" << fy << "</text>\n";
  }
  os << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + plot_h / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + plot_h / 2 << ")\">" << escape(y_label) << "</text>\n";

  for (double g : guides) {
    if (g < xmin || g > xmax)
      continue;
    os << "<line x1=\"" << px(g) << "\" y1=\"" << kTop << "\" x2=\"" << px(g)
       << "\" y2=\"" << kTop + plot_h
       << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  }

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto &s = series[k];
    const char *colour = kColours[k % kColours.size()];
    os << "<polyline fill=\"none\" stroke=\"" << colour
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      os << (i ? " " : "") << px(s.x[i]) << ',' << py(s.y[i]);
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 16.0 * k
       << "\" fill=\"" << colour << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace slabdiff
