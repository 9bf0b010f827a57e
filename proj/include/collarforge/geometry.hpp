#pragma once

#include <cmath>

#include "collarforge/errors.hpp"

namespace collarforge {

// Ambient dimension of the manifold; boundary spheres are (n-1)-dimensional.
// Supported range is 3..7 inclusive.
class Dim {
 public:
  explicit Dim(int n) : n_(n) {
    if (n < 3 || n > 7) throw input_error("dimension must be in 3..7");
  }
  int value() const noexcept { return n_; }
  friend bool operator==(Dim a, Dim b) noexcept { return a.n_ == b.n_; }
  friend bool operator!=(Dim a, Dim b) noexcept { return a.n_ != b.n_; }

 private:
  int n_;
};

// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2), Gamma at half-integers hard-coded.
double unit_sphere_area(Dim n);

// Radius of the round sphere with the given (n-1)-area.
double area_radius(double area, Dim n);

// m(f, f') = f^{n-2} (1 - f'^2) / 2 for the rotationally symmetric ansatz
// ds^2 + f(s)^2 g_*.  Nondecreasing in s exactly when scalar curvature >= 0.
double quasilocal_mass(double f, double fprime, Dim n);

// One sample of a warped product metric A(x)^2 ds^2 + (scale) g.
struct WarpedMetricSample {
  double s = 0.0;                  // proper-distance coordinate
  double lapse = 1.0;              // A, dimensionless, > 0
  double warp = 1.0;               // f, length, > 0
  double fiber_metric_scale = 1.0; // length^2 factor multiplying the fiber metric

  void validate() const {
    if (!(lapse > 0.0) || !(warp > 0.0) || !(fiber_metric_scale > 0.0))
      throw input_error("warped metric sample must have positive lapse, warp and scale");
  }
};

}  // namespace collarforge
