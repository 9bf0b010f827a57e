#pragma once

#include <functional>
#include <vector>

namespace collarforge {

struct QuadratureRule {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
};

// q-point Gauss rule on [-1,1] for the weight (1-x^2)^alpha, alpha >= 0.
// alpha = 0 is Gauss-Legendre.  Weights integrate the weight function exactly:
// sum w_i = sqrt(pi) Gamma(alpha+1) / Gamma(alpha+3/2).
QuadratureRule gauss_gegenbauer(int q, double alpha);

QuadratureRule gauss_legendre(int q);

// Adaptive Simpson on [a,b] with Richardson correction.  Stops when the local
// error estimate is below max(rel_tol * |I|, abs_tol).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol = 1e-11, double abs_tol = 1e-14);

}  // namespace collarforge
