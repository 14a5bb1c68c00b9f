#include "restress/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace restress::io::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

// Blue-white-red diverging map for signed fields.
std::string diverging_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto lerp = [](double a, double b, double u) { return a + (b - a) * u; };
  double r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = lerp(33, 247, u);
    g = lerp(102, 247, u);
    b = lerp(172, 247, u);
  } else {
    const double u = (t - 0.5) / 0.5;
    r = lerp(247, 178, u);
    g = lerp(247, 24, u);
    b = lerp(247, 43, u);
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(r),
                static_cast<int>(g), static_cast<int>(b));
  return buf;
}

}  // namespace

Figure::Figure(int columns, int panel_width, int panel_height)
    : columns_(columns), panel_w_(panel_width), panel_h_(panel_height) {
  if (columns < 1) throw std::invalid_argument("Figure: columns must be >= 1");
}

void Figure::add_panel(Panel p) { items_.push_back({false, std::move(p), {}}); }
void Figure::add_heatmap(Heatmap h) { items_.push_back({true, {}, std::move(h)}); }

void Figure::save(const std::string& path, bool stamp) const {
  const int n = static_cast<int>(items_.size());
  const int rows = (n + columns_ - 1) / columns_;
  const int width = columns_ * panel_w_;
  const int height = std::max(1, rows) * panel_h_;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  if (stamp) {
    char buf[64];
    const std::time_t now = std::time(nullptr);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out += std::string("<!-- generated ") + buf + " -->\n";
  }
  if (!metadata.empty()) {
    std::string safe = metadata;
    size_t at = 0;
    while ((at = safe.find("--", at)) != std::string::npos) safe.replace(at, 2, "- ");
    out += "<!-- " + safe + " -->\n";
  }
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const double ml = 52, mr = 14, mt = 26, mb = 34;  // panel margins
  for (int idx = 0; idx < n; ++idx) {
    const double ox = (idx % columns_) * panel_w_;
    const double oy = (idx / columns_) * panel_h_;
    const double pw = panel_w_ - ml - mr, ph = panel_h_ - mt - mb;
    const auto& item = items_[idx];

    const std::string title = item.is_heatmap ? item.heatmap.title : item.panel.title;
    out += "<text x=\"" + num(ox + panel_w_ / 2.0) + "\" y=\"" + num(oy + 15) +
           "\" text-anchor=\"middle\" font-weight=\"bold\">" + title + "</text>\n";

    if (item.is_heatmap) {
      const auto& h = item.heatmap;
      Range vr;
      for (double v : h.values) vr.include(v);
      if (!(vr.lo <= vr.hi)) vr = {0.0, 1.0};
      const double vmax = std::max(std::abs(vr.lo), std::abs(vr.hi));
      const double lo = vmax > 0 ? -vmax : -1.0, hi = vmax > 0 ? vmax : 1.0;
      const double cw = pw / h.nx, ch = ph / h.ny;
      for (int j = 0; j < h.ny; ++j)
        for (int i = 0; i < h.nx; ++i) {
          const double v = h.values[static_cast<size_t>(j) * h.nx + i];
          const double t = (v - lo) / (hi - lo);
          // Row 0 is the bottom of the data; SVG y grows downward.
          out += "<rect x=\"" + num(ox + ml + i * cw) + "\" y=\"" +
                 num(oy + mt + (h.ny - 1 - j) * ch) + "\" width=\"" +
                 num(cw + 0.5) + "\" height=\"" + num(ch + 0.5) +
                 "\" fill=\"" + diverging_color(t) + "\"/>\n";
        }
      out += "<rect x=\"" + num(ox + ml) + "\" y=\"" + num(oy + mt) +
             "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
             "\" fill=\"none\" stroke=\"black\"/>\n";
      out += "<text x=\"" + num(ox + ml) + "\" y=\"" + num(oy + mt + ph + 24) +
             "\">" + h.xlabel + "  [" + num(lo) + ", " + num(hi) + "]</text>\n";
      continue;
    }

    const auto& p = item.panel;
    Range xr, yr;
    for (const auto& s : p.series)
      for (size_t i = 0; i < s.x.size(); ++i) {
        xr.include(s.x[i]);
        yr.include(s.y[i]);
        if (!s.yerr.empty()) {
          yr.include(s.y[i] + s.yerr[i]);
          yr.include(s.y[i] - s.yerr[i]);
        }
      }
    xr.pad();
    yr.pad();
    auto sx = [&](double v) { return ox + ml + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto sy = [&](double v) { return oy + mt + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

    // Axes with min/max tick labels.
    out += "<rect x=\"" + num(ox + ml) + "\" y=\"" + num(oy + mt) +
           "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    if (yr.lo < 0.0 && yr.hi > 0.0)
      out += "<line x1=\"" + num(ox + ml) + "\" y1=\"" + num(sy(0)) +
             "\" x2=\"" + num(ox + ml + pw) + "\" y2=\"" + num(sy(0)) +
             "\" stroke=\"#bbbbbb\"/>\n";
    out += "<text x=\"" + num(ox + ml - 4) + "\" y=\"" + num(oy + mt + ph) +
           "\" text-anchor=\"end\">" + num(yr.lo) + "</text>\n";
    out += "<text x=\"" + num(ox + ml - 4) + "\" y=\"" + num(oy + mt + 10) +
           "\" text-anchor=\"end\">" + num(yr.hi) + "</text>\n";
    out += "<text x=\"" + num(ox + ml) + "\" y=\"" + num(oy + mt + ph + 14) +
           "\">" + num(xr.lo) + "</text>\n";
    out += "<text x=\"" + num(ox + ml + pw) + "\" y=\"" + num(oy + mt + ph + 14) +
           "\" text-anchor=\"end\">" + num(xr.hi) + "</text>\n";
    out += "<text x=\"" + num(ox + panel_w_ / 2.0) + "\" y=\"" +
           num(oy + mt + ph + 28) + "\" text-anchor=\"middle\">" + p.xlabel +
           "</text>\n";
    out += "<text x=\"" + num(ox + 12) + "\" y=\"" + num(oy + mt - 6) + "\">" +
           p.ylabel + "</text>\n";

    double legend_y = oy + mt + 12;
    for (const auto& s : p.series) {
      if (s.line && s.x.size() > 1) {
        std::string pts;
        for (size_t i = 0; i < s.x.size(); ++i)
          pts += num(sx(s.x[i])) + "," + num(sy(s.y[i])) + " ";
        out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               s.color + "\" stroke-width=\"1.5\"/>\n";
      }
      if (s.points)
        for (size_t i = 0; i < s.x.size(); ++i) {
          out += "<circle cx=\"" + num(sx(s.x[i])) + "\" cy=\"" +
                 num(sy(s.y[i])) + "\" r=\"2.5\" fill=\"" + s.color + "\"/>\n";
          if (!s.yerr.empty())
            out += "<line x1=\"" + num(sx(s.x[i])) + "\" y1=\"" +
                   num(sy(s.y[i] - s.yerr[i])) + "\" x2=\"" + num(sx(s.x[i])) +
                   "\" y2=\"" + num(sy(s.y[i] + s.yerr[i])) + "\" stroke=\"" +
                   s.color + "\"/>\n";
        }
      if (!s.label.empty()) {
        out += "<text x=\"" + num(ox + ml + pw - 4) + "\" y=\"" + num(legend_y) +
               "\" text-anchor=\"end\" fill=\"" + s.color + "\">" + s.label +
               "</text>\n";
        legend_y += 13;
      }
    }
  }
  out += "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << out;
}

}  // namespace restress::io::svg
