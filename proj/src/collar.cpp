#include "collarforge/collar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collarforge/curvature_fd.hpp"
#include "collarforge/errors.hpp"

namespace collarforge {

namespace {

// Cubic Lagrange interpolation on a uniform grid t_i = i h. Used only to feed
// the finite-difference cross-check with continuous samplers of the tabulated
// axisym fields.
double interp4(const std::vector<double>& y, double h, double t) {
  const auto n = static_cast<std::ptrdiff_t>(y.size());
  double x = t / h;
  auto i = static_cast<std::ptrdiff_t>(std::floor(x));
  i = std::clamp<std::ptrdiff_t>(i, 1, n - 3);
  const double u = x - static_cast<double>(i);
  const double wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return wm * y[i - 1] + w0 * y[i] + w1 * y[i + 1] + w2 * y[i + 2];
}

double deficit_sqrt(const CollarExtension& c, double v) {
  const double dn = static_cast<double>(c.n.value());
  return std::sqrt(std::max(0.0, 1.0 - 2.0 * c.m / std::pow(v, dn - 2.0)));
}

// Raw slice mean curvature, no endpoint pinning; verification uses this form
// so corrupted fields cannot hide behind the exact endpoints.
double slice_mean_curvature_formula(const CollarExtension& c, double s, std::size_t i) {
  const double v = c.v_at(s);
  const double dn = static_cast<double>(c.n.value());
  return (dn - 1.0) * deficit_sqrt(c, v) / (c.A.values[i] * v);
}

std::vector<std::size_t> subsample_indices(std::size_t total, std::size_t wanted) {
  if (wanted >= total || wanted < 2) {
    std::vector<std::size_t> all(total);
    for (std::size_t i = 0; i < total; ++i) all[i] = i;
    return all;
  }
  std::vector<std::size_t> idx(wanted);
  for (std::size_t i = 0; i < wanted; ++i)
    idx[i] = (i * (total - 1) + (wanted - 1) / 2) / (wanted - 1);
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

struct FdProbeResult {
  bool checked = false;
  double fine = 0.0, coarse = 0.0;  // max |closed form - fd| at step h and 2h
  double scale = 1.0;
};

// Independent curvature probe: realize the collar as a concrete warped metric
// and difference its components, sharing nothing with the closed form.
FdProbeResult fd_cross_check(const CollarExtension& c) {
  FdProbeResult out;
  const double s_o = c.s_o();
  const std::vector<double> s_fracs = {0.25, 0.5, 0.75};

  if (c.data.backend() == BoundaryBackend::homogeneous) {
    const double R_g = c.data.scalar_curvature()[0];
    if (!(R_g > 0.0)) return out;
    const double dn = static_cast<double>(c.n.value());
    // Constant scalar curvature is realized on the round sphere of radius
    // r_hat; in the arclength gauge the collar becomes a pure radial profile.
    const double r_hat = std::sqrt((dn - 1.0) * (dn - 2.0) / R_g);
    const double lapse = c.A.values[0];
    const auto profile_fn = [&](double sigma) {
      return (r_hat / c.r_o) * c.v_at(sigma / lapse);
    };
    for (int pass = 0; pass < 2; ++pass) {
      const double h = lapse * s_o / (pass == 0 ? 32.0 : 64.0);
      double worst = 0.0;
      for (double f : s_fracs) {
        const double s = f * s_o;
        const double closed = scalar_curvature_closed_form(c, s, 0);
        const double fd = radial_scalar_curvature_fd(c.n, profile_fn, lapse * s, h);
        worst = std::max(worst, std::fabs(fd - closed));
        out.scale = std::max(out.scale, std::fabs(closed));
      }
      (pass == 0 ? out.coarse : out.fine) = worst;
    }
    out.checked = true;
    return out;
  }

  if (c.data.backend() == BoundaryBackend::axisym_s2) {
    const auto& lat = c.data.latitudes();
    const auto& lam = c.data.metric_lambda();
    const auto& mu = c.data.metric_mu();
    const double hg = lat[1] - lat[0];
    const std::size_t N = lat.size();
    const auto sampler = [&](double s, double t) {
      WarpedSample2 g;
      const double scale = c.v_at(s) / c.r_o;
      g.A = interp4(c.A.values, hg, t);
      g.B = scale * interp4(lam, hg, t);
      g.C = scale * interp4(mu, hg, t);
      return g;
    };
    const std::vector<std::size_t> nodes = {
        (35 * (N - 1) + 50) / 100, (N - 1) / 2, (65 * (N - 1) + 50) / 100};
    for (int pass = 0; pass < 2; ++pass) {
      const double hs = s_o / (pass == 0 ? 32.0 : 64.0);
      const double ht = hs;
      double worst = 0.0;
      for (double f : s_fracs) {
        const double s = f * s_o;
        for (std::size_t idx : nodes) {
          const double closed = scalar_curvature_closed_form(c, s, idx);
          const double fd = warped_scalar_curvature_fd(c.n, sampler, s, lat[idx], hs, ht);
          worst = std::max(worst, std::fabs(fd - closed));
          out.scale = std::max(out.scale, std::fabs(closed));
        }
      }
      (pass == 0 ? out.coarse : out.fine) = worst;
    }
    out.checked = true;
    return out;
  }

  return out;  // tabulated data carries no metric to difference
}

}  // namespace

double CollarExtension::v_at(double s) const {
  if (degenerate) throw input_error("degenerate collar has no interior");
  if (s < 0.0 || s > profile.s_o * (1.0 + 1e-12))
    throw input_error("collar coordinate outside [0, s_o]");
  return profile.radius_at(profile.s_o - std::min(s, profile.s_o));
}

double CollarExtension::v_slope_at(double s) const {
  if (degenerate) throw input_error("degenerate collar has no interior");
  if (s < 0.0 || s > profile.s_o * (1.0 + 1e-12))
    throw input_error("collar coordinate outside [0, s_o]");
  return -profile.slope_at(profile.s_o - std::min(s, profile.s_o));
}

CollarExtension build_collar(const BoundaryData& data, CollarMode mode,
                             std::size_t profile_samples) {
  CollarExtension c{.n = data.n(), .data = data, .mode = mode, .theta = 0.0, .m = 0.0,
                    .r_o = 0.0, .degenerate = false, .profile = {}, .A = {},
                    .curvature_bracket = {}};
  c.r_o = data.area_radius();
  c.theta = theta(data, mode);  // throws when the data is inadmissible

  const CollarParameters params = collar_parameters(data, c.theta, mode);
  c.m = params.m;
  c.A = params.A;

  if (data.mean_curvature_is_zero()) {
    c.degenerate = true;
    return c;
  }

  c.profile = solve_profile(c.m, c.r_o, c.n, profile_samples);

  const auto& H = data.mean_curvature();
  const auto& R = data.scalar_curvature();
  const double coeff = static_cast<double>(c.n.value() - 2) /
                       static_cast<double>(c.n.value() - 1);
  c.curvature_bracket.resize(H.size());
  if (mode == CollarMode::cmc) {
    const double h_o = data.max_mean_curvature();
    const double used = coeff * h_o * h_o / c.theta;  // equals min scalar curvature
    for (std::size_t i = 0; i < H.size(); ++i) c.curvature_bracket[i] = R[i] - used;
  } else {
    BoundaryField inv_h;
    inv_h.values.resize(H.size());
    for (std::size_t i = 0; i < H.size(); ++i) inv_h.values[i] = 1.0 / H[i];
    const BoundaryField lap = laplace_beltrami(data, inv_h);
    for (std::size_t i = 0; i < H.size(); ++i)
      c.curvature_bracket[i] =
          R[i] - coeff * H[i] * H[i] / c.theta - 2.0 * H[i] * lap.values[i];
  }
  return c;
}

BoundaryField mean_curvature_slice(const CollarExtension& collar, double s) {
  if (collar.degenerate) throw input_error("degenerate collar has no interior");
  if (s < 0.0 || s > collar.s_o() * (1.0 + 1e-12))
    throw input_error("collar coordinate outside [0, s_o]");

  BoundaryField out;
  out.units = "1/length";
  const std::size_t N = collar.data.sample_count();
  if (s == 0.0) {
    // The boundary slice reproduces the data exactly; the cmc collar meets it
    // with the constant max H.
    if (collar.mode == CollarMode::cmc)
      out.values.assign(N, collar.data.max_mean_curvature());
    else
      out.values = collar.data.mean_curvature();
    return out;
  }
  if (s >= collar.s_o()) {
    out.values.assign(N, 0.0);  // minimal end
    return out;
  }
  out.values.resize(N);
  for (std::size_t i = 0; i < N; ++i)
    out.values[i] = slice_mean_curvature_formula(collar, s, i);
  return out;
}

double scalar_curvature_closed_form(const CollarExtension& collar, double s,
                                    std::size_t sample_index) {
  if (collar.degenerate) throw input_error("degenerate collar has no interior");
  if (sample_index >= collar.curvature_bracket.size())
    throw input_error("sample index out of range");
  const double ratio = collar.r_o / collar.v_at(s);
  return ratio * ratio * collar.curvature_bracket[sample_index];
}

double minimal_end_area(const CollarExtension& collar) {
  const double dn = static_cast<double>(collar.n.value());
  const double from_theta =
      collar.data.area() * std::pow(1.0 - collar.theta, (dn - 1.0) / (dn - 2.0));
  if (collar.degenerate) return from_theta;  // equals the boundary area

  const double v_end = collar.v_at(collar.s_o());
  const double from_profile = unit_sphere_area(collar.n) * std::pow(v_end, dn - 1.0);
  if (std::fabs(from_profile - from_theta) >
      Tolerances::active().algebraic * std::max(1.0, from_theta))
    throw violation_error("minimal end area routes disagree");
  return from_theta;
}

CollarVerification verify_proposition(const CollarExtension& collar, std::size_t grid_s,
                                      std::size_t grid_x) {
  if (collar.degenerate)
    throw input_error("degenerate collar has nothing to verify");
  if (grid_s < 4) throw input_error("verification grid too small");
  const Tolerances tol = Tolerances::active();
  const double dn = static_cast<double>(collar.n.value());
  const double s_o = collar.s_o();

  CollarVerification rep;
  rep.grid_s = grid_s;
  rep.grid_x = grid_x;

  const std::vector<std::size_t> xs =
      subsample_indices(collar.data.sample_count(), grid_x);

  // Scalar curvature over the grid.
  double min_R = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid_s; ++j) {
    const double s = s_o * static_cast<double>(j) / static_cast<double>(grid_s - 1);
    const double ratio = collar.r_o / collar.v_at(s);
    for (std::size_t i : xs)
      min_R = std::min(min_R, ratio * ratio * collar.curvature_bracket[i]);
  }
  rep.min_scalar_curvature = min_R;

  const FdProbeResult fd = fd_cross_check(collar);
  rep.fd_checked = fd.checked;
  rep.fd_max_abs_diff = fd.fine;
  rep.fd_coarse_abs_diff = fd.coarse;
  const bool fd_ok =
      !fd.checked || fd.fine <= std::max(0.35 * fd.coarse, 1e-4 * fd.scale);

  const double nonneg_tol = std::max(1e-6, tol.ode);
  rep.clauses.push_back({"scalar_curvature_nonnegative",
                         min_R >= -nonneg_tol && fd_ok, min_R, nonneg_tol});

  // Boundary warp factor.
  const double warp_err = std::fabs(collar.v_at(0.0) - collar.r_o) / collar.r_o;
  rep.clauses.push_back({"boundary_warp_matches", warp_err <= tol.algebraic, warp_err,
                         tol.algebraic});

  // Boundary mean curvature from the raw formula against the data.
  const double h_scale = std::max(1.0, collar.data.max_mean_curvature());
  double h0_err = 0.0;
  for (std::size_t i : xs) {
    const double ref = collar.mode == CollarMode::cmc
                           ? collar.data.max_mean_curvature()
                           : collar.data.mean_curvature()[i];
    h0_err = std::max(h0_err,
                      std::fabs(slice_mean_curvature_formula(collar, 0.0, i) - ref));
  }
  h0_err /= h_scale;
  rep.clauses.push_back({"boundary_mean_curvature_matches", h0_err <= tol.algebraic,
                         h0_err, tol.algebraic});

  // Interior slices strictly expanding toward the boundary.
  double min_H = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < grid_s; ++j) {
    const double s = s_o * static_cast<double>(j) / static_cast<double>(grid_s - 1);
    for (std::size_t i : xs)
      min_H = std::min(min_H, slice_mean_curvature_formula(collar, s, i));
  }
  rep.clauses.push_back({"interior_mean_curvature_positive", min_H > 0.0, min_H, 0.0});

  // Minimal end area identity, both routes.
  const double from_theta =
      collar.data.area() * std::pow(1.0 - collar.theta, (dn - 1.0) / (dn - 2.0));
  const double from_profile =
      unit_sphere_area(collar.n) * std::pow(collar.v_at(s_o), dn - 1.0);
  const double area_err = std::fabs(from_profile - from_theta) / from_theta;
  rep.clauses.push_back({"minimal_end_area_identity", area_err <= tol.algebraic,
                         area_err, tol.algebraic});

  rep.all_pass = std::all_of(rep.clauses.begin(), rep.clauses.end(),
                             [](const ClauseReport& c) { return c.pass; });
  return rep;
}

}  // namespace collarforge
