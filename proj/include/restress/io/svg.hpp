#ifndef RESTRESS_IO_SVG_HPP
#define RESTRESS_IO_SVG_HPP

#include <string>
#include <vector>

namespace restress::io::svg {

struct Series {
  std::vector<double> x, y;
  std::string color = "#1f6fb4";
  bool line = true;
  bool points = false;
  std::string label;
  std::vector<double> yerr;  // optional error bars
};

struct Panel {
  std::string title, xlabel, ylabel;
  std::vector<Series> series;
};

struct Heatmap {
  std::string title;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major, ny rows of nx
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  std::string xlabel, ylabel;
};

/// A fixed grid of line panels and/or heatmaps written as one SVG.  Plots
/// exist for eyeball comparison; nothing downstream parses them.
class Figure {
 public:
  Figure(int columns, int panel_width = 360, int panel_height = 280);

  void add_panel(Panel p);
  void add_heatmap(Heatmap h);

  /// Free-form metadata emitted as an SVG comment (the config echo).
  std::string metadata;

  /// stamp = true appends a generation-time comment (otherwise output is
  /// byte-stable across runs).
  void save(const std::string& path, bool stamp = false) const;

 private:
  int columns_, panel_w_, panel_h_;
  struct Item {
    bool is_heatmap;
    Panel panel;
    Heatmap heatmap;
  };
  std::vector<Item> items_;
};

}  // namespace restress::io::svg

#endif
