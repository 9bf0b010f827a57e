#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace collarforge::detail {

struct InterpCell {
  std::size_t i;
  double t, h;  // local coordinate in [0,1] and cell width
};

// Cell containing x in the ascending grid xs; clamps to the end cells.
inline InterpCell locate(const std::vector<double>& xs, double x) {
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
  if (i + 1 >= xs.size()) i = xs.size() - 2;
  const double h = xs[i + 1] - xs[i];
  return {i, (x - xs[i]) / h, h};
}

inline double hermite_cell(double y0, double d0, double y1, double d1, double t, double h) {
  const double t2 = t * t, t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * h * d0 +
         (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * h * d1;
}

// Slope of the cubic Hermite piece; exactly d0/d1 at the cell ends.
inline double hermite_slope_cell(double y0, double d0, double y1, double d1, double t, double h) {
  const double t2 = t * t;
  return ((6.0 * t2 - 6.0 * t) * (y0 - y1)) / h + (3.0 * t2 - 4.0 * t + 1.0) * d0 +
         (3.0 * t2 - 2.0 * t) * d1;
}

// Cubic Hermite interpolation through (xs, ys) with node slopes ds; xs must
// ascend. Exact at nodes in both value and slope. Works on nonuniform grids.
inline double hermite_at(const std::vector<double>& xs, const std::vector<double>& ys,
                         const std::vector<double>& ds, double x) {
  const InterpCell c = locate(xs, x);
  return hermite_cell(ys[c.i], ds[c.i], ys[c.i + 1], ds[c.i + 1], c.t, c.h);
}

}  // namespace collarforge::detail
