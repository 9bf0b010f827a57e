#pragma once

#include <vector>

#include "collarforge/collar.hpp"
#include "collarforge/exterior.hpp"

namespace collarforge {

// Collar and exterior joined along their common round boundary sphere. The
// glued warp profile W lives on t in [-lapse * s_o, s_max]: the collar piece
// run backwards in arclength for t < 0, the exterior for t >= 0. W is
// continuous with a slope jump at the corner t = 0.
struct CornerManifold {
  CollarExtension collar;
  RotSymExterior exterior;

  double lapse = 1.0;         // the collar's constant lapse; 1 for round data
  double H_minus = 0.0;       // corner mean curvature from the collar side
  double H_minus_data = 0.0;  // the same quantity read off the boundary data
  double H_plus = 0.0;        // corner mean curvature from the exterior side
  double slope_jump = 0.0;    // W'(0+) - W'(0-); nonpositive iff the corner is admissible
  double metric_residual = 0.0;  // relative induced-metric mismatch at the corner
  double mass_jump = 0.0;        // exterior quasilocal mass at the corner minus collar mass
  bool corner_ok = false;        // H_minus >= H_plus up to the tolerance band
  bool data_corner_ok = false;   // same comparison with H_minus_data

  double t_min() const { return -lapse * collar.s_o(); }
  double t_max() const { return exterior.s_max(); }
  double warp_at(double t) const;
  double warp_slope_at(double t) const;  // one-sided limit from below at t = 0
  double quasilocal_at(double t) const;
};

// Joins the pieces, certifying: matching dimension and boundary radius, round
// boundary data (needed for a rotationally symmetric result), a corner that
// satisfies H_minus >= H_plus, and internal consistency of the collar fields.
// Consistency failure means corrupted inputs and throws violation_error; a
// genuinely violated corner throws inadmissible_error.
CornerManifold glue(const CollarExtension& collar, const RotSymExterior& exterior);

struct MollifyReport {
  double delta = 0.0;
  double slope_jump = 0.0;          // the corner jump J that was smoothed away
  double c0_distance = 0.0;         // max |W_delta - W| = (5/32) delta |J|
  double end_mass = 0.0;            // quasilocal mass at t_max, unchanged by smoothing
  bool mass_monotone = false;       // quasilocal mass nondecreasing through the zone
  double min_zone_curvature = 0.0;  // smallest FD scalar curvature inside the zone
  std::vector<double> t, w, wp;     // merged samples of the smoothed profile
};

// Replaces the corner by a C^{1,1} profile inside |t| < delta, leaving both
// pieces exactly intact outside. The correction is the once-integrated smooth
// step of the slope jump, so the smoothed slope interpolates W'(0-) to W'(0+)
// and the profile moves by (5/32) delta |J| in C^0, linear in delta.
MollifyReport mollify_corner(const CornerManifold& corner, double delta,
                             std::size_t zone_samples = 512);

double manifold_adm_mass(const CornerManifold& corner);

}  // namespace collarforge
