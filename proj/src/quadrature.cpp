#include "collarforge/quadrature.hpp"

#include <cmath>
#include <cstddef>

#include "collarforge/errors.hpp"

namespace collarforge {

namespace {

// Symmetric tridiagonal eigensolver (implicit-shift QL), classic tql2 shape.
// d: diagonal, e: off-diagonal (e[0..m-2] used), z: row vector updated so that
// on return z[i] is the first component of the i-th eigenvector.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const std::size_t m = d.size();
  if (m == 1) return;
  e.push_back(0.0);
  for (std::size_t l = 0; l < m; ++l) {
    int iter = 0;
    std::size_t mm;
    do {
      for (mm = l; mm + 1 < m; ++mm) {
        double dd = std::fabs(d[mm]) + std::fabs(d[mm + 1]);
        if (std::fabs(e[mm]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (mm != l) {
        if (++iter > 60) throw convergence_error("quadrature node solve did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[mm] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = mm; i-- > l;) {
          double f = s * e[i], b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[mm] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          f = z[i + 1];
          z[i + 1] = s * z[i] + c * f;
          z[i] = c * z[i] - s * f;
        }
        if (r == 0.0 && mm - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[mm] = 0.0;
      }
    } while (mm != l);
  }
  // sort ascending, permuting z alongside
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::size_t k = i;
    for (std::size_t j = i + 1; j < m; ++j)
      if (d[j] < d[k]) k = j;
    if (k != i) {
      std::swap(d[i], d[k]);
      std::swap(z[i], z[k]);
    }
  }
}

double gamma_ratio_mu0(double alpha) {
  // mu0 = int_{-1}^{1} (1-x^2)^alpha dx = sqrt(pi) Gamma(a+1)/Gamma(a+3/2)
  return std::sqrt(M_PI) * std::exp(std::lgamma(alpha + 1.0) - std::lgamma(alpha + 1.5));
}

}  // namespace

QuadratureRule gauss_gegenbauer(int q, double alpha) {
  if (q < 1) throw input_error("quadrature order must be >= 1");
  if (alpha < 0.0) throw input_error("gegenbauer weight exponent must be >= 0");
  // Golub-Welsch: Jacobi matrix for the monic orthogonal recurrence
  //   beta_k = k (k + 2 alpha) / ((2k + 2 alpha + 1)(2k + 2 alpha - 1))
  std::vector<double> d(q, 0.0), e;
  e.reserve(q);
  for (int k = 1; k < q; ++k) {
    double num = k * (k + 2.0 * alpha);
    double den = (2.0 * k + 2.0 * alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0);
    e.push_back(std::sqrt(num / den));
  }
  std::vector<double> z(q, 0.0);
  z[0] = 1.0;
  tridiag_ql(d, e, z);
  QuadratureRule rule;
  rule.x = d;
  rule.w.resize(q);
  const double mu0 = gamma_ratio_mu0(alpha);
  for (int i = 0; i < q; ++i) rule.w[i] = mu0 * z[i] * z[i];
  return rule;
}

QuadratureRule gauss_legendre(int q) { return gauss_gegenbauer(q, 0.0); }

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double c, double fc, double whole, double rel_tol,
                    double abs_tol, int depth) {
  double l = 0.5 * (a + c), r = 0.5 * (c + b);
  double fl = f(l), fr = f(r);
  double left = (c - a) / 6.0 * (fa + 4.0 * fl + fc);
  double right = (b - c) / 6.0 * (fc + 4.0 * fr + fb);
  double err = left + right - whole;
  if (depth <= 0 ||
      std::fabs(err) <= 15.0 * std::max(abs_tol, rel_tol * std::fabs(left + right)))
    return left + right + err / 15.0;
  return simpson_step(f, a, fa, c, fc, l, fl, left, rel_tol, 0.5 * abs_tol, depth - 1) +
         simpson_step(f, c, fc, b, fb, r, fr, right, rel_tol, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double c = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fc = f(c);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
  return simpson_step(f, a, fa, b, fb, c, fc, whole, rel_tol, abs_tol, 52);
}

}  // namespace collarforge
