#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "collarforge/boundary.hpp"
#include "collarforge/profile.hpp"

namespace collarforge {

// Collar metric A(x)^2 ds^2 + r_o^{-2} v(s)^2 g on [0, s_o] x boundary, where
// v runs the rotationally symmetric profile backwards from the boundary
// radius down to its horizon. One end carries the given data, the other is
// minimal.
struct CollarExtension {
  Dim n = Dim(3);
  BoundaryData data;
  CollarMode mode = CollarMode::cmc;
  double theta = 0.0;
  double m = 0.0;
  double r_o = 0.0;
  bool degenerate = false;  // H identically zero: zero-length collar
  SchwarzschildProfile profile;  // forward orientation, u(0) = horizon
  BoundaryField A;
  // (r_o / v)^2 * bracket(x) is the collar's scalar curvature; the bracket is
  // the admissibility slack rearranged, zero exactly where the deficit
  // parameter is attained.
  std::vector<double> curvature_bracket;

  double s_o() const { return degenerate ? 0.0 : profile.s_o; }
  double v_at(double s) const;        // warp factor, v(0) = r_o
  double v_slope_at(double s) const;  // dv/ds <= 0
};

CollarExtension build_collar(const BoundaryData& data, CollarMode mode,
                             std::size_t profile_samples = 2048);

// Mean curvature of the constant-s slice toward decreasing s:
// (n-1) sqrt(1 - 2m/v^{n-2}) / (A v). The endpoints are pinned exactly: the
// s = 0 slice returns the boundary's own field (the constant max H in cmc
// mode) and the s = s_o slice returns zero.
BoundaryField mean_curvature_slice(const CollarExtension& collar, double s);

// Scalar curvature of the collar at (s, sample index) from the closed form.
double scalar_curvature_closed_form(const CollarExtension& collar, double s,
                                    std::size_t sample_index);

// Area of the minimal end. Computed from the deficit identity
// area * (1 - theta)^{(n-1)/(n-2)} and cross-checked against the profile
// endpoint route; disagreement beyond the algebraic tolerance is a bug and
// throws violation_error.
double minimal_end_area(const CollarExtension& collar);

struct ClauseReport {
  std::string name;
  bool pass = false;
  double observed = 0.0;   // the extremal quantity the clause constrains
  double tolerance = 0.0;
};

struct CollarVerification {
  std::vector<ClauseReport> clauses;  // five clauses, fixed order
  bool all_pass = false;
  double min_scalar_curvature = 0.0;
  std::size_t grid_s = 0, grid_x = 0;
  bool fd_checked = false;          // independent finite-difference cross-check ran
  double fd_max_abs_diff = 0.0;     // at the finer of the two steps
  double fd_coarse_abs_diff = 0.0;  // at the doubled step, for decay visibility
};

// Samples the five collar guarantees on a grid: (1) scalar curvature
// nonnegative (cross-checked against the finite-difference oracle),
// (2) boundary warp equals r_o, (3) the s = 0 mean curvature formula
// reproduces the data, (4) interior slices have positive mean curvature,
// (5) minimal-end area identity. Degenerate collars are rejected.
CollarVerification verify_proposition(const CollarExtension& collar, std::size_t grid_s = 256,
                                      std::size_t grid_x = 128);

}  // namespace collarforge
