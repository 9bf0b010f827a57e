#include "collarforge/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "collarforge/errors.hpp"
#include "collarforge/interp.hpp"

namespace collarforge {

namespace {

constexpr double kStepFraction = 2e-3;  // step h = kStepFraction * f
constexpr double kFlatRatio = 1e-3;     // settled when |2m| / f^{n-2} drops below this
constexpr std::size_t kStepCap = 1'500'000;

// Shared integrator for f' = sqrt(1 - 2 m(s) / f^{n-2}), f(0) = r_o.
// Stops once s >= settle_s and the geometry is flat to kFlatRatio, or at
// s_max when s_max > 0. Slopes are stored from the constraint at the stored
// radii, so level spheres carry quasilocal mass m(s) exactly at the nodes.
RotSymExterior integrate_exterior(std::function<double(double)> mass_fn, double r_o, Dim n,
                                  double settle_s, double s_max, ExteriorKind kind) {
  if (r_o <= 0.0) throw input_error("exterior boundary radius must be positive");
  if (settle_s < 0.0) throw input_error("settle length must be nonnegative");
  const double dn = static_cast<double>(n.value());

  const auto radicand = [&](double sv, double fv) {
    const double rad = 1.0 - 2.0 * mass_fn(sv) / std::pow(fv, dn - 2.0);
    if (rad <= 0.0)
      throw input_error("exterior hits a horizon: mass too large for the warp radius");
    return rad;
  };
  const auto slope = [&](double sv, double fv) { return std::sqrt(radicand(sv, fv)); };

  RotSymExterior ext;
  ext.n = n;
  ext.kind = kind;
  ext.r_o = r_o;

  double sv = 0.0, fv = r_o;
  double m_prev = mass_fn(0.0);
  ext.s.push_back(sv);
  ext.f.push_back(fv);
  ext.fp.push_back(slope(sv, fv));

  const double settle_eff = std::max(settle_s, 2.0 * r_o);
  const bool capped = s_max > 0.0;
  for (std::size_t step = 0;; ++step) {
    const bool flat = std::abs(2.0 * mass_fn(sv)) / std::pow(fv, dn - 2.0) <= kFlatRatio;
    if (capped ? sv >= s_max * (1.0 - 1e-15) : (sv >= settle_eff && flat)) break;
    if (step >= kStepCap) throw convergence_error("exterior integration exceeded step limit");

    double h = kStepFraction * fv;
    if (capped) h = std::min(h, s_max - sv);
    const double k1 = slope(sv, fv);
    const double k2 = slope(sv + 0.5 * h, fv + 0.5 * h * k1);
    const double k3 = slope(sv + 0.5 * h, fv + 0.5 * h * k2);
    const double k4 = slope(sv + h, fv + h * k3);
    fv += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    sv += h;

    const double m_here = mass_fn(sv);
    if (m_here < m_prev - 1e-12 * std::max(1.0, std::abs(m_prev)))
      throw input_error("exterior mass function must be nondecreasing");
    m_prev = m_here;

    ext.s.push_back(sv);
    ext.f.push_back(fv);
    ext.fp.push_back(slope(sv, fv));
  }

  ext.adm_mass = mass_fn(ext.s.back());
  ext.mass_fn = std::move(mass_fn);
  return ext;
}

}  // namespace

std::string to_string(ExteriorKind k) {
  return k == ExteriorKind::schwarzschild ? "schwarzschild" : "generated";
}

double RotSymExterior::f_at(double s_eval) const {
  if (s_eval < 0.0 || s_eval > s.back() * (1.0 + 1e-12))
    throw input_error("exterior evaluated outside [0, s_max]");
  return detail::hermite_at(s, f, fp, std::min(s_eval, s.back()));
}

double RotSymExterior::fp_at(double s_eval) const {
  if (s_eval < 0.0 || s_eval > s.back() * (1.0 + 1e-12))
    throw input_error("exterior evaluated outside [0, s_max]");
  const detail::InterpCell c = detail::locate(s, std::min(s_eval, s.back()));
  return detail::hermite_slope_cell(f[c.i], fp[c.i], f[c.i + 1], fp[c.i + 1], c.t, c.h);
}

double RotSymExterior::quasilocal_at(double s_eval) const {
  return quasilocal_mass(f_at(s_eval), fp_at(s_eval), n);
}

double RotSymExterior::boundary_mean_curvature() const {
  return (static_cast<double>(n.value()) - 1.0) * fp.front() / r_o;
}

RotSymExterior make_schwarzschild_exterior(double m1, double r_o, Dim n) {
  if (r_o <= 0.0) throw input_error("exterior boundary radius must be positive");
  const double dn = static_cast<double>(n.value());
  if (std::pow(r_o, dn - 2.0) <= 2.0 * m1)
    throw input_error("exterior boundary at or inside the horizon");
  return integrate_exterior([m1](double) { return m1; }, r_o, n, 0.0, 0.0,
                            ExteriorKind::schwarzschild);
}

RotSymExterior make_generated_exterior(std::function<double(double)> mass_fn, double r_o, Dim n,
                                       double settle_s, double s_max) {
  if (!mass_fn) throw input_error("generated exterior needs a mass function");
  if (s_max < 0.0) throw input_error("s_max must be positive when given");
  return integrate_exterior(std::move(mass_fn), r_o, n, settle_s, s_max,
                            ExteriorKind::generated);
}

BoundaryData boundary_data_of_exterior(const RotSymExterior& ext) {
  const double dn = static_cast<double>(ext.n.value());
  const double area = unit_sphere_area(ext.n) * std::pow(ext.r_o, dn - 1.0);
  const double round_R = (dn - 1.0) * (dn - 2.0) / (ext.r_o * ext.r_o);
  return BoundaryData::homogeneous(ext.n, area, round_R, ext.boundary_mean_curvature());
}

double manifold_adm_mass(const RotSymExterior& ext) {
  if (std::abs(1.0 - ext.fp.back()) > 1e-3)
    throw convergence_error("exterior did not settle near flat; ADM limit not reached");
  return ext.adm_mass;
}

}  // namespace collarforge
