#pragma once

#include <cstddef>
#include <vector>

#include "collarforge/geometry.hpp"

namespace collarforge {

// Rotationally symmetric vacuum profile u(s): the warp factor of
// ds^2 + u(s)^2 g_round grown from its horizon, where the quasilocal mass
// equals m at every radius. Satisfies u'' = (n-2) m / u^{n-1}, u(0) = r_m,
// u'(0) = 0, equivalently u'^2 + 2m/u^{n-2} = 1.
struct SchwarzschildProfile {
  Dim n = Dim(3);
  double m = 0.0;    // mass
  double r_m = 0.0;  // horizon radius (2m)^{1/(n-2)}
  double r_o = 0.0;  // outer radius u(s_o)
  double s_o = 0.0;  // proper length of [r_m, r_o]
  std::vector<double> s, u, up;  // samples, s ascending from 0 to s_o

  // Cubic Hermite interpolation between samples (slopes are exact at nodes).
  double radius_at(double s_eval) const;
  double slope_at(double s_eval) const;
};

// (2m)^{1/(n-2)}
double horizon_radius(double m, Dim n);

// Proper distance from the horizon to radius r_o along the profile:
// integral of (1 - 2m/r^{n-2})^{-1/2}. The endpoint square-root singularity
// is removed exactly by the substitution r = r_m + t^2 together with the
// factorization r^{n-2} - r_m^{n-2} = (r - r_m) * sum_k r^k r_m^{n-3-k}.
double proper_length(double m, double r_o, Dim n);

// Integrates the profile ODE from the horizon with a Taylor seed and fixed
// Runge-Kutta steps, then Newton-refines the endpoint so u(s_o) = r_o.
SchwarzschildProfile solve_profile(double m, double r_o, Dim n, std::size_t samples = 2048);

}  // namespace collarforge
