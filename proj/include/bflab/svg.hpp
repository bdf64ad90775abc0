#pragma once

// Minimal SVG line-plot emitter (axes, tick labels and one polyline per
// series). Presentation only.

#include <string>
#include <utility>
#include <vector>

namespace bflab::svg {

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::string comment;  // emitted as an XML comment
};

std::string render(const LinePlot& plot);

}  // namespace bflab::svg
