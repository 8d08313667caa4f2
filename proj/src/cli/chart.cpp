#include "aoisched/cli/chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace aoisched::cli {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string fmt(double x, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round tick step: 1, 2 or 5 times a power of ten.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

}  // namespace

std::string render_svg_chart(const std::string& tidy_csv, const std::string& title) {
  std::istringstream in(tidy_csv);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("chart: empty CSV");
  const auto header = split(line, ',');
  auto column = [&](const char* name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error(std::string("chart: missing column ") + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto cx_name = column("x_name");
  const auto cx = column("x");
  const auto cseries = column("series");
  const auto cvalue = column("value");

  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  std::string x_name;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    const auto need = std::max({cx_name, cx, cseries, cvalue});
    if (cells.size() <= need) throw std::runtime_error("chart: short CSV row");
    x_name = cells[cx_name];
    auto [it, inserted] = index.emplace(cells[cseries], series.size());
    if (inserted) series.push_back({cells[cseries], {}});
    series[it->second].points.emplace_back(std::stod(cells[cx]), std::stod(cells[cvalue]));
  }
  if (series.empty()) throw std::runtime_error("chart: no data rows");

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  ymin = std::min(0.0, ymin);
  if (ymax == ymin) ymax = ymin + 1.0;
  const double ystep = tick_step(ymax - ymin, 6);
  ymax = std::ceil(ymax / ystep) * ystep;
  const double xstep = tick_step(xmax - xmin, 8);

  constexpr double W = 760, H = 480, L = 70, R = 200, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return T + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fmt(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";

  for (double y = ymin; y <= ymax + 1e-9 * ystep; y += ystep) {
    os << "<line x1=\"" << fmt(L) << "\" x2=\"" << fmt(L + pw) << "\" y1=\"" << fmt(py(y))
       << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << fmt(L - 6) << "\" y=\"" << fmt(py(y) + 4)
       << "\" text-anchor=\"end\">" << fmt(y, "%g") << "</text>\n";
  }
  for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep; x += xstep) {
    os << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(T + ph + 18)
       << "\" text-anchor=\"middle\">" << fmt(x, "%g") << "</text>\n";
  }
  os << "<rect x=\"" << fmt(L) << "\" y=\"" << fmt(T) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fmt(L + pw / 2) << "\" y=\"" << fmt(H - 16)
     << "\" text-anchor=\"middle\">" << escape(x_name) << "</text>\n";
  os << "<text transform=\"translate(18," << fmt(T + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">EWSAoI</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series[s].points.size(); ++i) {
      const auto [x, y] = series[s].points[i];
      os << (i ? " " : "") << fmt(px(x)) << ',' << fmt(py(y));
    }
    os << "\"/>\n";
    for (auto [x, y] : series[s].points) {
      os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"2.5\" fill=\""
         << color << "\"/>\n";
    }
    const double ly = T + 10 + 18.0 * static_cast<double>(s);
    os << "<line x1=\"" << fmt(L + pw + 12) << "\" x2=\"" << fmt(L + pw + 36) << "\" y1=\""
       << fmt(ly) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fmt(L + pw + 42) << "\" y=\"" << fmt(ly + 4) << "\">"
       << escape(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace aoisched::cli
