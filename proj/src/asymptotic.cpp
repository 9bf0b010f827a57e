#include "collarforge/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include "collarforge/quadrature.hpp"

namespace collarforge {

AsymptoticMetricSpec AsymptoticMetricSpec::flat(Dim n) {
  AsymptoticMetricSpec spec{n, {}, 1.0, static_cast<double>(n.value() - 2),
                            static_cast<double>(n.value() + 1)};
  const int d = n.value();
  spec.deviation = [d](const double*, SymMatrix& e) {
    e.n = d;
    e.a.fill(0.0);
  };
  return spec;
}

AsymptoticMetricSpec AsymptoticMetricSpec::isotropic_schwarzschild(Dim n, double mass) {
  if (!(mass >= 0.0)) throw input_error("isotropic_schwarzschild: mass must be >= 0");
  const int d = n.value();
  const double p = d - 2.0;
  AsymptoticMetricSpec spec{n, {}, 1.0, p, 2.0 * p + 2.0};
  // horizon sits at |x| = (m/2)^{1/(n-2)}; keep the excluded ball outside it
  spec.ball_radius = std::max(1.0, 2.0 * std::pow(0.5 * mass + 1e-300, 1.0 / p));
  spec.deviation = [d, mass](const double* x, SymMatrix& e) {
    double rho2 = 0.0;
    for (int i = 0; i < d; ++i) rho2 += x[i] * x[i];
    const double rho = std::sqrt(rho2);
    // (1 + m / (2 rho^{n-2}))^{4/(n-2)} - 1 via expm1/log1p: full relative
    // precision even when the deviation is ~1e-12
    const double u = 0.5 * mass / std::pow(rho, d - 2);
    const double dev = std::expm1((4.0 / (d - 2)) * std::log1p(u));
    e.n = d;
    e.a.fill(0.0);
    for (int i = 0; i < d; ++i) e.at(i, i) = dev;
  };
  return spec;
}

namespace {

int default_polar_order(int n) {
  switch (n) {
    case 3: return 16;
    case 4: return 12;
    case 5: return 10;
    case 6: return 8;
    default: return 7;  // n = 7: 7^5 polar x azimuth nodes
  }
}

}  // namespace

double sphere_integral(Dim n, double r, const std::function<double(const double*)>& f,
                       int polar_order) {
  const int d = n.value();
  if (!(r > 0.0)) throw input_error("sphere_integral: radius must be positive");
  const int q = polar_order > 0 ? polar_order : default_polar_order(d);
  const int n_polar = d - 2;           // angles with sin^j weights, j = d-2 .. 1
  const int m_azim = std::max(16, 2 * q + 4);

  // rule per polar angle k (0-based): weight sin^{d-2-k}, substitute c = cos
  std::vector<QuadratureRule> rules(n_polar);
  for (int k = 0; k < n_polar; ++k) {
    double alpha = 0.5 * (d - 2 - k - 1);  // (1 - c^2)^alpha absorbs sin^{j-1} dc
    rules[k] = gauss_gegenbauer(q, alpha);
  }

  std::vector<int> idx(n_polar, 0);
  std::vector<double> x(d, 0.0);
  double total = 0.0;
  const double azim_w = 2.0 * M_PI / m_azim;
  bool done = n_polar > 0 ? false : true;

  auto eval_azimuth = [&](double prefix_w, double sin_prod) {
    // x = r (cos t1, sin t1 cos t2, ..., prod sin * cos phi, prod sin * sin phi)
    double acc = 0.0;
    for (int a = 0; a < m_azim; ++a) {
      double phi = (a + 0.5) * azim_w;
      x[d - 2] = r * sin_prod * std::cos(phi);
      x[d - 1] = r * sin_prod * std::sin(phi);
      acc += f(x.data());
    }
    total += prefix_w * azim_w * acc;
  };

  if (n_polar == 0) {
    // n = 2 never occurs (Dim >= 3); guard kept for clarity
    throw input_error("sphere_integral: dimension too small");
  }

  while (!done) {
    double w = 1.0, sin_prod = 1.0;
    for (int k = 0; k < n_polar; ++k) {
      double c = rules[k].x[idx[k]];
      w *= rules[k].w[idx[k]];
      x[k] = r * sin_prod * c;
      sin_prod *= std::sqrt(std::max(0.0, 1.0 - c * c));
    }
    eval_azimuth(w, sin_prod);
    // odometer
    int k = n_polar - 1;
    while (k >= 0 && ++idx[k] == q) idx[k--] = 0;
    if (k < 0) done = true;
  }
  return total * std::pow(r, d - 1);
}

AdmResult adm_mass(const AsymptoticMetricSpec& spec, std::vector<double> radii,
                   const AdmOptions& opts) {
  const int d = spec.n.value();
  if (radii.size() < 3) throw input_error("adm_mass: need at least 3 radii");
  std::sort(radii.begin(), radii.end());
  for (double r : radii)
    if (!(r >= 2.0 * spec.ball_radius))
      throw input_error("adm_mass: radii must be >= 2x the excluded ball radius");
  if (!(spec.decay_p > 0.5 * (d - 2)))
    throw input_error("adm_mass: decay order p must exceed (n-2)/2");

  AdmResult out;
  out.decay_exponent = 2.0 * spec.decay_p - d + 2.0;

  const double norm = 1.0 / (2.0 * (d - 1) * unit_sphere_area(spec.n));

  for (double r : radii) {
    const double h = opts.fd_step_rel * r;
    auto integrand = [&](const double* x) {
      // I_j = d_i e_ij - d_j e_ii, contracted with nu = x / r
      double xp[7], xm[7];
      SymMatrix ep, em;
      double grad[7][7][7];  // grad[k][i][j] = d_k e_ij
      for (int k = 0; k < d; ++k) {
        for (int t = 0; t < d; ++t) {
          xp[t] = x[t];
          xm[t] = x[t];
        }
        xp[k] += h;
        xm[k] -= h;
        spec.deviation(xp, ep);
        spec.deviation(xm, em);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            grad[k][i][j] = (ep.at(i, j) - em.at(i, j)) / (2.0 * h);
      }
      double rr = 0.0;
      for (int t = 0; t < d; ++t) rr += x[t] * x[t];
      rr = std::sqrt(rr);
      double val = 0.0;
      for (int j = 0; j < d; ++j) {
        double div = 0.0, trace_grad = 0.0;
        for (int i = 0; i < d; ++i) {
          div += grad[i][i][j];
          trace_grad += grad[j][i][i];
        }
        val += (div - trace_grad) * (x[j] / rr);
      }
      return val;
    };
    double flux = sphere_integral(spec.n, r, integrand, opts.polar_order);
    out.raw.push_back({r, norm * flux});
  }

  // least squares fit mass(r) = m + c t, t = r^{-e}
  const double e = out.decay_exponent;
  double st = 0.0, sa = 0.0, stt = 0.0, sta = 0.0;
  const auto k = static_cast<double>(out.raw.size());
  for (const auto& s : out.raw) {
    double t = std::pow(s.radius, -e);
    st += t;
    sa += s.mass;
    stt += t * t;
    sta += t * s.mass;
  }
  double det = k * stt - st * st;
  out.mass = (sa * stt - st * sta) / det;

  for (std::size_t i = 0; i + 1 < out.raw.size(); ++i) {
    double t1 = std::pow(out.raw[i].radius, -e), t2 = std::pow(out.raw[i + 1].radius, -e);
    double a1 = out.raw[i].mass, a2 = out.raw[i + 1].mass;
    out.pairwise.push_back((a2 * t1 - a1 * t2) / (t1 - t2));
  }
  const auto [lo, hi] = std::minmax_element(out.pairwise.begin(), out.pairwise.end());
  out.spread = *hi - *lo;
  out.converged =
      out.spread <= std::max(opts.converge_abs, opts.converge_rel * std::fabs(out.mass));
  if (!out.converged && opts.throw_on_failure)
    throw convergence_error("mass not converged: extrapolant spread " +
                            std::to_string(out.spread));
  return out;
}

}  // namespace collarforge
