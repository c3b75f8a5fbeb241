#include "motslab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace motslab::svg {

namespace {

constexpr double W = 720, H = 440, L = 80, R = 180, T = 40, B = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
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

void open(std::ostringstream& os, const Axes& ax, const std::string& comment) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<!-- " << escape(comment) << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(W / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(ax.title)
     << "</text>\n";
  os << "<text x=\"" << num(L + (W - L - R) / 2) << "\" y=\"" << num(H - 15) << "\" text-anchor=\"middle\">"
     << escape(ax.xlabel) << "</text>\n";
  os << "<text transform=\"translate(18," << num(T + (H - T - B) / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(ax.ylabel) << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

std::string line_chart(const Axes& ax, const std::vector<Series>& series, const std::string& comment) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  auto ty = [&](double v) { return ax.log_y ? std::log10(std::max(v, 1e-300)) : v; };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return L + (v - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  open(os, ax, comment);
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(H - B + 16) << "\" text-anchor=\"middle\">" << tick(xv)
       << "</text>\n";
    const double ypix = H - B - (yv - y0) / (y1 - y0) * (H - T - B);
    os << "<text x=\"" << num(L - 6) << "\" y=\"" << num(ypix + 4) << "\" text-anchor=\"end\">"
       << tick(ax.log_y ? std::pow(10.0, yv) : yv) << "</text>\n";
  }
  int row = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) os << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
    os << "\"/>\n";
    if (s.markers)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
          os << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"2.5\" fill=\""
             << s.color << "\"/>\n";
    const double ly = T + 14 + 18 * row++;
    os << "<line x1=\"" << num(W - R + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(W - R + 34)
       << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    os << "<text x=\"" << num(W - R + 40) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap(const Axes& ax, const Heatmap& m, const std::string& comment) {
  std::ostringstream os;
  open(os, ax, comment);
  const double cw = (W - L - R) / std::max(1, m.nx), ch = (H - T - B) / std::max(1, m.ny);
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const int c = m.cells[static_cast<std::size_t>(j) * m.nx + i];
      os << "<rect x=\"" << num(L + i * cw) << "\" y=\"" << num(H - B - (j + 1) * ch) << "\" width=\"" << num(cw)
         << "\" height=\"" << num(ch) << "\" fill=\"" << m.palette[static_cast<std::size_t>(c)] << "\"/>\n";
    }
  for (std::size_t k = 0; k < m.legend.size(); ++k) {
    const double ly = T + 14 + 18 * static_cast<double>(k);
    os << "<rect x=\"" << num(W - R + 10) << "\" y=\"" << num(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
       << m.palette[k] << "\"/>\n";
    os << "<text x=\"" << num(W - R + 28) << "\" y=\"" << num(ly) << "\">" << escape(m.legend[k]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace motslab::svg
