#pragma once

#include <array>
#include <functional>
#include <vector>

#include "collarforge/geometry.hpp"

namespace collarforge {

// Symmetric n x n matrix, n <= 7, dense storage.
struct SymMatrix {
  int n = 3;
  std::array<double, 49> a{};

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Asymptotically flat coordinate metric outside a ball, given through the
// deviation e_ij(x) = h_ij(x) - delta_ij.  Working with the deviation keeps
// finite differences at full relative precision far out, where the deviation
// drops below the ulp of h_ii ~ 1.  |e| = O(|x|^-p), |de| = O(|x|^-p-1) with
// p > (n-2)/2; q > n controls the scalar-curvature integrability and is kept
// for reporting only.
struct AsymptoticMetricSpec {
  Dim n;
  std::function<void(const double* x, SymMatrix& e)> deviation;
  double ball_radius = 1.0;  // integration spheres must stay outside 2x this
  double decay_p = 1.0;
  double decay_q = 4.0;

  static AsymptoticMetricSpec flat(Dim n);
  static AsymptoticMetricSpec isotropic_schwarzschild(Dim n, double mass);
};

struct MassSample {
  double radius = 0.0;
  double mass = 0.0;
};

struct AdmResult {
  double mass = 0.0;
  double decay_exponent = 0.0;   // exponent of the fitted correction term
  double spread = 0.0;           // max - min over pairwise extrapolants
  bool converged = false;
  std::vector<MassSample> raw;   // flux integral value at each radius
  std::vector<double> pairwise;  // extrapolants from consecutive radius pairs
};

struct AdmOptions {
  double fd_step_rel = 1e-5;   // FD step = fd_step_rel * radius
  int polar_order = 0;         // 0 = per-dimension default
  double converge_rel = 1e-2;  // spread tolerance relative to |mass|
  double converge_abs = 1e-8;  // absolute spread floor
  bool throw_on_failure = true;
};

// Integral of a scalar over the coordinate sphere |x| = r using a product
// Gauss-Gegenbauer rule in cos(polar angles) and a uniform rule in the
// periodic angle.  The sin^j weights are part of the quadrature weight, so
// constants are integrated exactly at any order.
double sphere_integral(Dim n, double r, const std::function<double(const double*)>& f,
                       int polar_order = 0);

// ADM mass: flux integral (1 / (2 (n-1) |S^{n-1}|)) oint (d_i e_ij - d_j e_ii) nu^j
// evaluated at each radius, then extrapolated with the single-term decay model
// mass(r) = m + c r^{-(2p - n + 2)} by least squares over the supplied radii.
AdmResult adm_mass(const AsymptoticMetricSpec& spec, std::vector<double> radii,
                   const AdmOptions& opts = {});

}  // namespace collarforge
