#include "collarforge/curvature_fd.hpp"

#include <cmath>

#include "collarforge/errors.hpp"

namespace collarforge {

double radial_scalar_curvature_fd(Dim n, const std::function<double(double)>& f, double s,
                                  double h) {
  if (!(h > 0.0)) throw input_error("fd step must be positive");
  const double f0 = f(s);
  if (!(f0 > 0.0)) throw input_error("warp factor must be positive at the fd center");
  const double fp = f(s + h);
  const double fm = f(s - h);
  const double d1 = (fp - fm) / (2.0 * h);
  const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
  const double d = static_cast<double>(n.value());
  return -2.0 * (d - 1.0) * d2 / f0 + (d - 1.0) * (d - 2.0) * (1.0 - d1 * d1) / (f0 * f0);
}

double warped_scalar_curvature_fd(Dim n,
                                  const std::function<WarpedSample2(double, double)>& g,
                                  double s, double t, double hs, double ht) {
  if (!(hs > 0.0) || !(ht > 0.0)) throw input_error("fd steps must be positive");
  const WarpedSample2 g0 = g(s, t);
  if (!(g0.A > 0.0) || !(g0.B > 0.0) || !(g0.C > 0.0))
    throw input_error("metric components must be positive at the fd center");

  const WarpedSample2 gsp = g(s + hs, t), gsm = g(s - hs, t);
  const WarpedSample2 gtp = g(s, t + ht), gtm = g(s, t - ht);
  const WarpedSample2 gsp2 = g(s + 0.5 * hs, t), gsm2 = g(s - 0.5 * hs, t);
  const WarpedSample2 gtp2 = g(s, t + 0.5 * ht), gtm2 = g(s, t - 0.5 * ht);

  const double area0 = g0.A * g0.B;

  // Gaussian curvature of the base plane q = A^2 ds^2 + B^2 dt^2 in flux form,
  // with the half-node coefficients sampled directly.
  const double ts =
      ((gsp.B - g0.B) / (hs * gsp2.A) - (g0.B - gsm.B) / (hs * gsm2.A)) / hs;
  const double tt =
      ((gtp.A - g0.A) / (ht * gtp2.B) - (g0.A - gtm.A) / (ht * gtm2.B)) / ht;
  const double gauss = -(ts + tt) / area0;

  // Base Laplacian of the fiber scale, same flux form.
  const double fs = ((gsp2.B / gsp2.A) * (gsp.C - g0.C) / hs -
                     (gsm2.B / gsm2.A) * (g0.C - gsm.C) / hs) /
                    hs;
  const double ft = ((gtp2.A / gtp2.B) * (gtp.C - g0.C) / ht -
                     (gtm2.A / gtm2.B) * (g0.C - gtm.C) / ht) /
                    ht;
  const double lap_c = (fs + ft) / area0;

  const double cs = (gsp.C - gsm.C) / (2.0 * hs);
  const double ct = (gtp.C - gtm.C) / (2.0 * ht);
  const double grad_c2 = (cs / g0.A) * (cs / g0.A) + (ct / g0.B) * (ct / g0.B);

  // Warped product over a round fiber of dimension k and curvature k(k-1).
  const double k = static_cast<double>(n.value() - 2);
  return 2.0 * gauss + k * (k - 1.0) * (1.0 - grad_c2) / (g0.C * g0.C) -
         2.0 * k * lap_c / g0.C;
}

CurvatureGrid warped_scalar_curvature_grid(
    Dim n, const std::function<WarpedSample2(double, double)>& g, double s0, double s1,
    std::size_t ns, double t0, double t1, std::size_t nt) {
  if (!(s1 > s0) || !(t1 > t0)) throw input_error("curvature grid needs a nonempty box");
  if (ns == 0 || nt == 0) throw input_error("curvature grid needs at least one cell");
  const double ds = (s1 - s0) / static_cast<double>(ns);
  const double dt = (t1 - t0) / static_cast<double>(nt);

  CurvatureGrid out;
  out.s.resize(ns);
  out.t.resize(nt);
  out.R.resize(ns * nt);
  for (std::size_t i = 0; i < ns; ++i) out.s[i] = s0 + (static_cast<double>(i) + 0.5) * ds;
  for (std::size_t j = 0; j < nt; ++j) out.t[j] = t0 + (static_cast<double>(j) + 0.5) * dt;

  // Cell-centered points with half-cell steps: every fd sample stays inside
  // the box, so samplers defined only on [s0,s1] x [t0,t1] are safe.
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j)
      out.R[i * nt + j] =
          warped_scalar_curvature_fd(n, g, out.s[i], out.t[j], 0.5 * ds, 0.5 * dt);
  return out;
}

}  // namespace collarforge
