#pragma once

#include <string>
#include <vector>

namespace motslab::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

struct Axes {
  std::string title, xlabel, ylabel;
  bool log_y = false;
};

std::string line_chart(const Axes& axes, const std::vector<Series>& series, const std::string& comment);

// cells[j * nx + i] indexes into palette; row j = 0 is drawn at the bottom
struct Heatmap {
  int nx = 0, ny = 0;
  std::vector<int> cells;
  std::vector<std::string> palette, legend;
};
std::string heatmap(const Axes& axes, const Heatmap& map, const std::string& comment);

}  // namespace motslab::svg
