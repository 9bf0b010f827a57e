#pragma once

#include <functional>
#include <vector>

#include "collarforge/geometry.hpp"

namespace collarforge {

// Finite-difference scalar curvature oracles.  Both work from metric
// component samplers alone, second order accurate, and share no code with the
// closed-form curvature routes they are used to cross-check.

// Rotationally symmetric metric ds^2 + f(s)^2 g_round(unit S^{n-1}).
// R = -2(n-1) f''/f + (n-1)(n-2)(1 - f'^2)/f^2 with f', f'' by central FD.
double radial_scalar_curvature_fd(Dim n, const std::function<double(double)>& f, double s,
                                  double h);

// Doubly warped metric A(s,t)^2 ds^2 + B(s,t)^2 dt^2 + C(s,t)^2 g_round(unit S^{n-3+1});
// t is the latitude on the fiber, the round block has dimension n-2.
// Covers collar metrics (axisymmetric or homogeneous fibers, reduced to the
// (s, t) plane) and rotationally symmetric exteriors (A=1, B=f, C=f sin t).
struct WarpedSample2 {
  double A = 1.0;
  double B = 1.0;
  double C = 1.0;
};

double warped_scalar_curvature_fd(Dim n,
                                  const std::function<WarpedSample2(double, double)>& g,
                                  double s, double t, double hs, double ht);

struct CurvatureGrid {
  std::vector<double> s, t;         // evaluation points
  std::vector<double> R;            // row-major, R[i * t.size() + j]
};

CurvatureGrid warped_scalar_curvature_grid(
    Dim n, const std::function<WarpedSample2(double, double)>& g, double s0, double s1,
    std::size_t ns, double t0, double t1, std::size_t nt);

}  // namespace collarforge
