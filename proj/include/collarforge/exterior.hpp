#pragma once

#include <functional>
#include <string>
#include <vector>

#include "collarforge/boundary.hpp"
#include "collarforge/geometry.hpp"

namespace collarforge {

enum class ExteriorKind { schwarzschild, generated };
std::string to_string(ExteriorKind k);

// Rotationally symmetric exterior ds^2 + f(s)^2 g_round on s in [0, s_max],
// with slope f' = sqrt(1 - 2 m(s) / f^{n-2}) so the quasilocal mass of the
// level sphere at s equals m(s) identically.
struct RotSymExterior {
  Dim n{3};
  ExteriorKind kind{ExteriorKind::schwarzschild};
  double r_o = 0.0;  // f(0)

  std::vector<double> s;   // arclength samples, ascending from 0
  std::vector<double> f;   // warp radius at each sample
  std::vector<double> fp;  // slope, stored from the defining constraint

  std::function<double(double)> mass_fn;  // m(s), nondecreasing on [0, s_max]
  double adm_mass = 0.0;                  // m(s_max); the true ADM limit when flat

  double s_max() const { return s.back(); }
  double f_at(double s_eval) const;
  double fp_at(double s_eval) const;
  // Quasilocal mass of the level sphere at s; equals mass_fn(s) by construction.
  double quasilocal_at(double s_eval) const;
  // Mean curvature of the inner boundary sphere, (n-1) f'(0) / r_o.
  double boundary_mean_curvature() const;
};

// Exact Schwarzschild exterior of mass m1 outside the sphere f = r_o.
// Requires r_o^{n-2} > 2 m1; m1 <= 0 (flat or negative mass) is allowed.
RotSymExterior make_schwarzschild_exterior(double m1, double r_o, Dim n);

// Integrates f' = sqrt(1 - 2 m(s) / f^{n-2}) outward from f(0) = r_o until the
// geometry has settled near flat (2m/f^{n-2} <= 1e-3) and s >= settle_s, or
// until s_max when given. mass_fn must be nondecreasing with m(0) causing no
// horizon inside; a nonpositive radicand anywhere aborts as an input error.
RotSymExterior make_generated_exterior(std::function<double(double)> mass_fn, double r_o, Dim n,
                                       double settle_s, double s_max = 0.0);

// Induced boundary data of the inner sphere: round metric of radius r_o with
// the exterior's boundary mean curvature.
BoundaryData boundary_data_of_exterior(const RotSymExterior& ext);

// ADM mass of the exterior manifold, m(s_max). Demands the geometry actually
// settled (1 - f'(s_max) <= 1e-3), else the limit was not reached.
double manifold_adm_mass(const RotSymExterior& ext);

}  // namespace collarforge
