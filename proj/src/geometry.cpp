#include "collarforge/geometry.hpp"

#include <cmath>

namespace collarforge {

namespace {

// Gamma(k/2) for k = 2..7; recursion Gamma(x+1) = x Gamma(x) from
// Gamma(1) = 1 and Gamma(1/2) = sqrt(pi).
double gamma_half(int twice_x) {
  const double sqrt_pi = std::sqrt(M_PI);
  switch (twice_x) {
    case 2: return 1.0;                       // Gamma(1)
    case 3: return 0.5 * sqrt_pi;             // Gamma(3/2)
    case 4: return 1.0;                       // Gamma(2)
    case 5: return 0.75 * sqrt_pi;            // Gamma(5/2)
    case 6: return 2.0;                       // Gamma(3)
    case 7: return (15.0 / 8.0) * sqrt_pi;    // Gamma(7/2)
    default: throw input_error("gamma_half: unsupported argument");
  }
}

}  // namespace

double unit_sphere_area(Dim n) {
  const int d = n.value();
  return 2.0 * std::pow(M_PI, 0.5 * d) / gamma_half(d);
}

double area_radius(double area, Dim n) {
  if (!(area > 0.0)) throw input_error("area_radius: area must be positive");
  return std::pow(area / unit_sphere_area(n), 1.0 / (n.value() - 1));
}

double quasilocal_mass(double f, double fprime, Dim n) {
  if (!(f > 0.0)) throw input_error("quasilocal_mass: radius must be positive");
  return 0.5 * std::pow(f, n.value() - 2) * (1.0 - fprime * fprime);
}

}  // namespace collarforge
