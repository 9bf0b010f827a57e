#include "collarforge/profile.hpp"

#include <algorithm>
#include <cmath>

#include "collarforge/errors.hpp"
#include "collarforge/interp.hpp"
#include "collarforge/quadrature.hpp"

namespace collarforge {

namespace {

// sum_{k=0}^{n-3} r^k r_m^{n-3-k}, the cofactor of (r - r_m) in
// r^{n-2} - r_m^{n-2}. Evaluating it directly avoids the cancellation the
// difference itself suffers near the horizon.
double horizon_cofactor(double r, double r_m, int n) {
  double sum = 0.0;
  for (int k = 0; k <= n - 3; ++k)
    sum += std::pow(r, static_cast<double>(k)) * std::pow(r_m, static_cast<double>(n - 3 - k));
  return sum;
}

}  // namespace

double horizon_radius(double m, Dim n) {
  if (!(m > 0.0)) throw input_error("mass must be positive");
  return std::pow(2.0 * m, 1.0 / static_cast<double>(n.value() - 2));
}

double proper_length(double m, double r_o, Dim n) {
  const double r_m = horizon_radius(m, n);
  if (!(r_o > r_m)) throw input_error("no collar: boundary inside horizon");
  const int d = n.value();
  // r = r_m + t^2 turns the integrand into 2 sqrt(r^{n-2} / cofactor(r)).
  const auto integrand = [&](double t) {
    const double r = r_m + t * t;
    return 2.0 * std::sqrt(std::pow(r, static_cast<double>(d - 2)) /
                           horizon_cofactor(r, r_m, d));
  };
  return adaptive_simpson(integrand, 0.0, std::sqrt(r_o - r_m), 1e-12, 1e-15);
}

SchwarzschildProfile solve_profile(double m, double r_o, Dim n, std::size_t samples) {
  if (samples < 16) throw input_error("profile needs at least 16 samples");
  const double r_m = horizon_radius(m, n);
  if (!(r_o > r_m)) throw input_error("no collar: boundary inside horizon");
  const int d = n.value();
  const double dn = static_cast<double>(d);

  SchwarzschildProfile p;
  p.n = n;
  p.m = m;
  p.r_m = r_m;
  p.r_o = r_o;
  p.s_o = proper_length(m, r_o, n);

  const auto accel = [&](double u) { return (dn - 2.0) * m / std::pow(u, dn - 1.0); };

  // Quartic Taylor seed at the horizon; the ODE is regular there but the seed
  // pins the even symmetry u'(0) = 0 exactly.
  const double a = (dn - 2.0) * m / (2.0 * std::pow(r_m, dn - 1.0));
  const double b = -a * a * (dn - 1.0) / (6.0 * r_m);
  const double s_seed = std::min(1e-3 * r_m, 0.25 * p.s_o);
  const auto taylor_u = [&](double s) { return r_m + s * s * (a + b * s * s); };
  const auto taylor_up = [&](double s) { return s * (2.0 * a + 4.0 * b * s * s); };

  p.s.resize(samples);
  p.u.resize(samples);
  p.up.resize(samples);
  const double ds = p.s_o / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) p.s[i] = ds * static_cast<double>(i);
  p.s.back() = p.s_o;

  const double h_target = p.s_o / std::max<std::size_t>(16384, 8 * samples);
  double s_cur = s_seed, u = taylor_u(s_seed), up = taylor_up(s_seed);
  const auto rk4_to = [&](double s_next) {
    const double span = s_next - s_cur;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(span) / h_target)));
    const double h = span / steps;
    for (int k = 0; k < steps; ++k) {
      const double k1u = up, k1p = accel(u);
      const double k2u = up + 0.5 * h * k1p, k2p = accel(u + 0.5 * h * k1u);
      const double k3u = up + 0.5 * h * k2p, k3p = accel(u + 0.5 * h * k2u);
      const double k4u = up + h * k3p, k4p = accel(u + h * k3u);
      u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      up += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    s_cur = s_next;
  };

  for (std::size_t i = 0; i < samples; ++i) {
    if (p.s[i] <= s_seed) {
      p.u[i] = taylor_u(p.s[i]);
      p.up[i] = taylor_up(p.s[i]);
    } else {
      rk4_to(p.s[i]);
      p.u[i] = u;
      p.up[i] = up;
    }
  }

  // Newton steps on the endpoint: move s_o until u(s_o) = r_o, reusing the
  // integrator for the (tiny) final displacement.
  for (int it = 0; it < 3 && up > 0.0; ++it) {
    const double shift = (r_o - u) / up;
    if (std::fabs(shift) < 1e-15 * p.s_o) break;
    rk4_to(s_cur + shift);
  }
  p.s_o = s_cur;
  p.s.back() = s_cur;
  p.u.back() = u;
  p.up.back() = up;
  return p;
}

double SchwarzschildProfile::radius_at(double s_eval) const {
  if (s_eval < 0.0 || s_eval > s_o * (1.0 + 1e-12))
    throw input_error("profile evaluated outside [0, s_o]");
  const detail::InterpCell c = detail::locate(s, std::min(s_eval, s_o));
  return detail::hermite_cell(u[c.i], up[c.i], u[c.i + 1], up[c.i + 1], c.t, c.h);
}

double SchwarzschildProfile::slope_at(double s_eval) const {
  if (s_eval < 0.0 || s_eval > s_o * (1.0 + 1e-12))
    throw input_error("profile evaluated outside [0, s_o]");
  const detail::InterpCell c = detail::locate(s, std::min(s_eval, s_o));
  const double dn = static_cast<double>(n.value());
  // The slope has its own exact node derivative from the ODE.
  const auto acc = [&](double radius) { return (dn - 2.0) * m / std::pow(radius, dn - 1.0); };
  return detail::hermite_cell(up[c.i], acc(u[c.i]), up[c.i + 1], acc(u[c.i + 1]), c.t, c.h);
}

}  // namespace collarforge
