#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "collarforge/curvature_fd.hpp"
#include "collarforge/errors.hpp"

using namespace collarforge;

namespace {

// Test-side integrator for vacuum profiles f' = sqrt(1 - 2m/f^{n-2}), fixed
// tiny RK4 steps from f(0) = f0. Independent of the production profile solver.
std::function<double(double)> vacuum_profile(double m, double f0, int n) {
  return [=](double s) {
    const auto slope = [=](double f) { return std::sqrt(1.0 - 2.0 * m / std::pow(f, n - 2.0)); };
    const int steps = 4000;
    const double h = s / steps;
    double f = f0;
    for (int i = 0; i < steps; ++i) {
      const double k1 = slope(f);
      const double k2 = slope(f + 0.5 * h * k1);
      const double k3 = slope(f + 0.5 * h * k2);
      const double k4 = slope(f + h * k3);
      f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return f;
  };
}

}  // namespace

TEST_CASE("radial FD reproduces the round sphere curvature") {
  // f(s) = r sin(s/r) turns ds^2 + f^2 g_round(S^{n-1}) into the round S^n
  // with scalar curvature n(n-1)/r^2.
  for (int n = 3; n <= 7; ++n) {
    const double r = 1.4;
    const auto f = [r](double s) { return r * std::sin(s / r); };
    for (double s : {0.4, 0.8, 1.3}) {
      const double fd = radial_scalar_curvature_fd(Dim(n), f, s, 1e-3);
      CHECK(fd == doctest::Approx(n * (n - 1.0) / (r * r)).epsilon(1e-5));
    }
  }
}

TEST_CASE("radial FD sees vacuum profiles as scalar flat") {
  for (int n : {3, 5, 7}) {
    const auto f = vacuum_profile(0.4, 1.9, n);
    for (double s : {0.5, 1.0, 2.0}) {
      const double fd = radial_scalar_curvature_fd(Dim(n), f, s, 2e-3);
      CHECK(std::abs(fd) <= 1e-5);
    }
  }
}

TEST_CASE("radial FD converges at second order") {
  const double r = 1.4;
  const auto f = [r](double s) { return r * std::sin(s / r); };
  const double exact = 3.0 * 2.0 / (r * r);
  const double e1 = std::abs(radial_scalar_curvature_fd(Dim(3), f, 0.9, 4e-2) - exact);
  const double e2 = std::abs(radial_scalar_curvature_fd(Dim(3), f, 0.9, 2e-2) - exact);
  const double e3 = std::abs(radial_scalar_curvature_fd(Dim(3), f, 0.9, 1e-2) - exact);
  CHECK(e1 / e2 >= 3.5);
  CHECK(e2 / e3 >= 3.5);
}

TEST_CASE("warped FD vanishes on flat space in spherical coordinates") {
  // ds^2 + s^2 dt^2 + (s sin t)^2 g_round is flat R^n written as a doubly
  // warped product over the (radius, latitude) plane.
  for (int n = 4; n <= 7; ++n) {
    const auto g = [](double s, double t) {
      return WarpedSample2{1.0, s, s * std::sin(t)};
    };
    for (double s : {0.8, 1.7})
      for (double t : {0.6, 1.2, 2.2}) {
        const double fd = warped_scalar_curvature_fd(Dim(n), g, s, t, 1e-3, 1e-3);
        CHECK(std::abs(fd) <= 1e-4);
      }
  }
}

TEST_CASE("warped FD reproduces cylinder curvature over a round sphere") {
  // ds^2 + r^2 dt^2 + (r sin t)^2 g_round: the product of a line with the
  // round (n-1)-sphere of radius r, scalar curvature (n-1)(n-2)/r^2.
  for (int n : {3, 4, 6}) {
    const double r = 2.3;
    const auto g = [r](double, double t) {
      return WarpedSample2{1.0, r, r * std::sin(t)};
    };
    const double exact = (n - 1.0) * (n - 2.0) / (r * r);
    for (double t : {0.7, 1.5})
      CHECK(warped_scalar_curvature_fd(Dim(n), g, 0.5, t, 1e-3, 1e-3) ==
            doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("warped FD converges at second order") {
  const auto g = [](double s, double t) {
    // Mildly inhomogeneous lapse and warp keep all terms active.
    return WarpedSample2{1.0 + 0.1 * std::sin(s + t), 2.0 + 0.2 * std::cos(s),
                         (2.0 + 0.2 * std::cos(s)) * std::sin(t)};
  };
  const double f1 = warped_scalar_curvature_fd(Dim(4), g, 1.0, 1.1, 8e-3, 8e-3);
  const double f2 = warped_scalar_curvature_fd(Dim(4), g, 1.0, 1.1, 4e-3, 4e-3);
  const double f3 = warped_scalar_curvature_fd(Dim(4), g, 1.0, 1.1, 2e-3, 2e-3);
  const double f4 = warped_scalar_curvature_fd(Dim(4), g, 1.0, 1.1, 1e-3, 1e-3);
  // Richardson: successive differences fall by ~4x when second order.
  const double d1 = std::abs(f1 - f2), d2 = std::abs(f2 - f3), d3 = std::abs(f3 - f4);
  CHECK(d1 / d2 >= 3.5);
  CHECK(d2 / d3 >= 3.5);
}

TEST_CASE("curvature grid is cell-centered and matches pointwise calls") {
  const auto g = [](double s, double t) {
    return WarpedSample2{1.0, s, s * std::sin(t)};
  };
  const std::size_t ns = 8, nt = 6;
  const double s0 = 0.5, s1 = 2.0, t0 = 0.3, t1 = 2.8;
  const CurvatureGrid grid = warped_scalar_curvature_grid(Dim(5), g, s0, s1, ns, t0, t1, nt);
  REQUIRE(grid.s.size() == ns);
  REQUIRE(grid.t.size() == nt);
  REQUIRE(grid.R.size() == ns * nt);
  const double ds = (s1 - s0) / ns, dt = (t1 - t0) / nt;
  for (std::size_t i = 0; i < ns; ++i)
    CHECK(grid.s[i] == doctest::Approx(s0 + (i + 0.5) * ds).epsilon(1e-14));
  for (std::size_t j = 0; j < nt; ++j)
    CHECK(grid.t[j] == doctest::Approx(t0 + (j + 0.5) * dt).epsilon(1e-14));
  // Half-cell stencils: the wrapper's entries agree with direct calls and the
  // outermost samples stay inside the box.
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < nt; ++j)
      CHECK(grid.R[i * nt + j] ==
            warped_scalar_curvature_fd(Dim(5), g, grid.s[i], grid.t[j], 0.5 * ds, 0.5 * dt));
  CHECK(grid.s.front() - 0.5 * ds >= s0);
  CHECK(grid.s.back() + 0.5 * ds <= s1);
  CHECK_THROWS_AS(warped_scalar_curvature_grid(Dim(5), g, 1.0, 1.0, 4, 0.0, 1.0, 4),
                  input_error);
  CHECK_THROWS_AS(warped_scalar_curvature_grid(Dim(5), g, 0.5, 2.0, 0, 0.0, 1.0, 4),
                  input_error);
}

TEST_CASE("degenerate inputs are rejected") {
  const auto f = [](double s) { return 1.0 + s; };
  CHECK_THROWS_AS(radial_scalar_curvature_fd(Dim(3), f, 0.5, 0.0), input_error);
  const auto g_bad = [](double, double) { return WarpedSample2{1.0, -1.0, 1.0}; };
  CHECK_THROWS_AS(warped_scalar_curvature_fd(Dim(4), g_bad, 1.0, 1.0, 1e-3, 1e-3),
                  input_error);
}
