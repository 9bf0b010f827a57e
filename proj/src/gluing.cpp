#include "collarforge/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "collarforge/curvature_fd.hpp"
#include "collarforge/errors.hpp"

namespace collarforge {

namespace {

// Quintic smooth step: integral of the C^1 bump (15/16)(1 - x^2)^2 on [-1, 1].
// S(-1) = 0, S(1) = 1, S(0) = 1/2.
double smooth_step(double x) {
  return 0.5 + (15.0 / 16.0) * (x - 2.0 * x * x * x / 3.0 + std::pow(x, 5) / 5.0);
}

// Integral of smooth_step with Q(-1) = 0; Q(1) = 1 and Q(0) = 5/32 exactly,
// which pins the C^0 distance of the smoothing.
double smooth_step_integral(double x) {
  const double x2 = x * x;
  return 0.5 * (x + 1.0) +
         (15.0 / 16.0) * (x2 / 2.0 - x2 * x2 / 6.0 + x2 * x2 * x2 / 30.0 - 11.0 / 30.0);
}

}  // namespace

double CornerManifold::warp_at(double t) const {
  const double lo = t_min(), hi = t_max();
  if (t < lo - 1e-12 * (hi - lo) || t > hi * (1.0 + 1e-12))
    throw input_error("glued profile evaluated outside its interval");
  if (t >= 0.0) return exterior.f_at(std::min(t, hi));
  return collar.v_at(std::min(-t / lapse, collar.s_o()));
}

double CornerManifold::warp_slope_at(double t) const {
  const double lo = t_min(), hi = t_max();
  if (t < lo - 1e-12 * (hi - lo) || t > hi * (1.0 + 1e-12))
    throw input_error("glued profile evaluated outside its interval");
  if (t > 0.0) return exterior.fp_at(std::min(t, hi));
  return -collar.v_slope_at(std::min(-t / lapse, collar.s_o())) / lapse;
}

double CornerManifold::quasilocal_at(double t) const {
  return quasilocal_mass(warp_at(t), warp_slope_at(t), collar.n);
}

CornerManifold glue(const CollarExtension& collar, const RotSymExterior& exterior) {
  if (collar.n != exterior.n) throw input_error("collar and exterior dimensions differ");
  if (collar.degenerate) throw input_error("zero-length collar has no corner to glue");
  const double r_o = exterior.r_o;
  if (std::abs(collar.r_o - r_o) > 1e-10 * std::max(collar.r_o, r_o))
    throw input_error("collar and exterior boundary radii differ");
  if (collar.data.backend() == BoundaryBackend::tabulated)
    throw input_error("tabulated boundary data cannot be certified round for gluing");
  if (collar.data.round_deviation() > 1e-8)
    throw input_error("gluing needs round boundary data");

  const auto [a_min, a_max] = std::minmax_element(collar.A.values.begin(), collar.A.values.end());
  if (*a_max - *a_min > 1e-12 * *a_max)
    throw input_error("gluing needs a rotationally symmetric collar (constant lapse)");

  CornerManifold c{collar, exterior};
  c.lapse = collar.A.values.front();

  const double dn = static_cast<double>(collar.n.value());
  const double v0 = collar.v_at(0.0);
  const double sqrt_theta = std::sqrt(collar.theta);
  c.metric_residual = std::abs(v0 - r_o) / r_o;
  c.H_minus = (dn - 1.0) * sqrt_theta / (c.lapse * v0);
  c.H_minus_data = collar.data.max_mean_curvature();
  c.H_plus = exterior.boundary_mean_curvature();
  c.slope_jump = exterior.fp.front() - sqrt_theta / c.lapse;
  c.mass_jump = exterior.quasilocal_at(0.0) - collar.m;

  // The collar's stored fields are redundant; recompute the corner mean
  // curvature from (m, v0, lapse) alone and the mass from the deficit
  // identity. Disagreement means the structure was tampered with or a bug
  // upstream, not bad user input.
  const Tolerances tol = Tolerances::active();
  const double deficit = 1.0 - 2.0 * collar.m / std::pow(v0, dn - 2.0);
  const double h_raw = (dn - 1.0) * std::sqrt(std::max(deficit, 0.0)) / (c.lapse * v0);
  const double m_identity = 0.5 * std::pow(collar.r_o, dn - 2.0) * (1.0 - collar.theta);
  const bool consistent =
      std::abs(h_raw - c.H_minus_data) <= 1e-7 * std::max(1.0, c.H_minus_data) &&
      std::abs(collar.m - m_identity) <= tol.algebraic * std::max(1.0, std::abs(m_identity)) &&
      c.metric_residual <= tol.algebraic;
  if (!consistent)
    throw violation_error("glued corner failed internal consistency of the collar fields");

  const double corner_tol = tol.band * std::max(1.0, std::abs(c.H_plus));
  c.corner_ok = c.H_minus >= c.H_plus - corner_tol;
  c.data_corner_ok = c.H_minus_data >= c.H_plus - corner_tol;
  if (!c.corner_ok)
    throw inadmissible_error(
        "corner condition violated: exterior mean curvature exceeds the collar's at the corner");
  return c;
}

MollifyReport mollify_corner(const CornerManifold& corner, double delta,
                             std::size_t zone_samples) {
  if (!(delta > 0.0)) throw input_error("mollification width must be positive");
  const double t_lo = corner.t_min(), t_hi = corner.t_max();
  if (delta >= 0.5 * std::min(-t_lo, t_hi))
    throw input_error("mollification width too large for the glued pieces");

  const double J = corner.slope_jump;
  const auto w_at = [&](double t) {
    const double x = std::clamp(t / delta, -1.0, 1.0);
    const double corr = delta * smooth_step_integral(x) + std::max(t - delta, 0.0) -
                        std::max(t, 0.0);
    return corner.warp_at(t) + J * corr;
  };
  const auto wp_at = [&](double t) {
    const double x = std::clamp(t / delta, -1.0, 1.0);
    const double step = t > 0.0 ? 1.0 : 0.0;
    return corner.warp_slope_at(t) + J * (smooth_step(x) - step);
  };

  MollifyReport rep;
  rep.delta = delta;
  rep.slope_jump = J;
  rep.c0_distance = (5.0 / 32.0) * delta * std::abs(J);
  rep.end_mass = quasilocal_mass(w_at(t_hi), wp_at(t_hi), corner.collar.n);

  // Quasilocal mass must stay nondecreasing through the smoothing zone; sweep
  // it densely with margins reaching into both exact pieces. The slack absorbs
  // the interpolation wiggle between profile nodes (about 1e-10), under which
  // the exact-piece plateaus are only piecewise constant.
  const std::size_t sweep = std::max<std::size_t>(zone_samples, 64);
  const double lo = -2.0 * delta, hi = 2.0 * delta;
  double prev = quasilocal_mass(w_at(lo), wp_at(lo), corner.collar.n);
  bool monotone = true;
  for (std::size_t i = 1; i <= sweep; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(sweep);
    const double q = quasilocal_mass(w_at(t), wp_at(t), corner.collar.n);
    if (q < prev - 1e-9 * std::max(1.0, std::abs(prev))) monotone = false;
    prev = q;
  }
  rep.mass_monotone = monotone;

  // Worst scalar curvature inside the zone, by finite differences on the
  // smoothed profile. Reported, not gated: the smoothing is only C^{1,1} at
  // the old corner, so the dip there is expected to stay bounded, not vanish.
  double min_r = std::numeric_limits<double>::infinity();
  const std::size_t probes = 129;
  const double h_fd = delta * 1e-2;
  for (std::size_t k = 0; k < probes; ++k) {
    const double t = -delta + 2.0 * delta * (static_cast<double>(k) + 0.5) /
                                  static_cast<double>(probes);
    min_r = std::min(min_r, radial_scalar_curvature_fd(corner.collar.n, w_at, t, h_fd));
  }
  rep.min_zone_curvature = min_r;

  // Merged sample grid: collar profile nodes, zone refinement, exterior nodes.
  std::vector<double> ts;
  ts.reserve(corner.collar.profile.s.size() + zone_samples + corner.exterior.s.size());
  for (double sp : corner.collar.profile.s)
    ts.push_back(corner.lapse * (sp - corner.collar.s_o()));
  for (std::size_t i = 0; i <= zone_samples; ++i)
    ts.push_back(-delta + 2.0 * delta * static_cast<double>(i) / static_cast<double>(zone_samples));
  for (std::size_t i = 1; i < corner.exterior.s.size(); ++i) ts.push_back(corner.exterior.s[i]);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [&](double a, double b) { return std::abs(a - b) <= 1e-14 * (t_hi - t_lo); }),
           ts.end());

  rep.t = ts;
  rep.w.reserve(ts.size());
  rep.wp.reserve(ts.size());
  for (double t : ts) {
    rep.w.push_back(w_at(t));
    rep.wp.push_back(wp_at(t));
  }
  return rep;
}

double manifold_adm_mass(const CornerManifold& corner) {
  return manifold_adm_mass(corner.exterior);
}

}  // namespace collarforge
