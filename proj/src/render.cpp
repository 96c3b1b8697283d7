#include "regionalize/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "regionalize/csv.hpp"
#include "regionalize/error.hpp"

namespace regionalize {

namespace {

// Qualitative palette; later regions cycle through hues by the golden angle.
constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};

double min_spacing(const Eigen::VectorXd& v) {
  std::set<double> distinct(v.data(), v.data() + v.size());
  double best = 0.0;
  for (auto it = distinct.begin(); std::next(it) != distinct.end() && it != distinct.end(); ++it) {
    const double gap = *std::next(it) - *it;
    if (gap > 0.0 && (best == 0.0 || gap < best)) best = gap;
  }
  return best;
}

}  // namespace

std::string region_color(int r) {
  if (r >= 0 && r < static_cast<int>(kPalette.size())) return kPalette[static_cast<std::size_t>(r)];
  const double hue = std::fmod(r * 137.50776405, 360.0);
  // HSV with s = 0.55, v = 0.85.
  const double c = 0.85 * 0.55;
  const double x = c * (1.0 - std::fabs(std::fmod(hue / 60.0, 2.0) - 1.0));
  const double m = 0.85 - c;
  double rgb[3] = {0, 0, 0};
  switch (static_cast<int>(hue / 60.0)) {
    case 0: rgb[0] = c, rgb[1] = x; break;
    case 1: rgb[0] = x, rgb[1] = c; break;
    case 2: rgb[1] = c, rgb[2] = x; break;
    case 3: rgb[1] = x, rgb[2] = c; break;
    case 4: rgb[0] = x, rgb[2] = c; break;
    default: rgb[0] = c, rgb[2] = x; break;
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((rgb[0] + m) * 255)),
                static_cast<int>(std::lround((rgb[1] + m) * 255)), static_cast<int>(std::lround((rgb[2] + m) * 255)));
  return buf;
}

std::string render_svg(const Dataset& d, const Partition& p, int pixels_per_cell) {
  if (!d.coordinates) throw DataError("rendering needs unit coordinates");
  if (p.size() != d.size()) throw InvalidArgument("partition size does not match the dataset");
  if (pixels_per_cell < 1) throw InvalidArgument("pixels_per_cell must be positive");
  const auto& xy = *d.coordinates;

  double cell = 0.0;
  for (int axis = 0; axis < 2; ++axis) {
    const double s = min_spacing(xy.col(axis));
    if (s > 0.0 && (cell == 0.0 || s < cell)) cell = s;
  }
  if (cell == 0.0) cell = 1.0;
  const double scale = pixels_per_cell / cell;
  const double x0 = xy.col(0).minCoeff() - cell / 2;
  const double y0 = xy.col(1).minCoeff() - cell / 2;
  const double width = (xy.col(0).maxCoeff() - x0 + cell / 2) * scale;
  const double height = (xy.col(1).maxCoeff() - y0 + cell / 2) * scale;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << csv::format(width) << "\" height=\""
      << csv::format(height) << "\" viewBox=\"0 0 " << csv::format(width) << ' ' << csv::format(height) << "\">\n";
  for (int i = 0; i < d.size(); ++i) {
    const double left = (xy(i, 0) - cell / 2 - x0) * scale;
    const double top = (xy(i, 1) - cell / 2 - y0) * scale;
    const double side = cell * scale;
    out << "  <polygon points=\"" << csv::format(left) << ',' << csv::format(top) << ' '
        << csv::format(left + side) << ',' << csv::format(top) << ' ' << csv::format(left + side) << ','
        << csv::format(top + side) << ' ' << csv::format(left) << ',' << csv::format(top + side) << "\" fill=\""
        << region_color(p[i]) << "\" stroke=\"#ffffff\" stroke-width=\"0.5\"><title>"
        << d.unit_ids[static_cast<std::size_t>(i)] << ": region " << p[i] + 1 << "</title></polygon>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace regionalize
