#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "collarforge/errors.hpp"
#include "collarforge/gluing.hpp"

using namespace collarforge;

namespace {

BoundaryData vacuum_boundary(int n, double m0, double r_o) {
  const double area = unit_sphere_area(Dim(n)) * std::pow(r_o, n - 1.0);
  const double R_g = (n - 1.0) * (n - 2.0) / (r_o * r_o);
  const double H = (n - 1.0) * std::sqrt(1.0 - 2.0 * m0 / std::pow(r_o, n - 2.0)) / r_o;
  return BoundaryData::homogeneous(Dim(n), area, R_g, H);
}

CornerManifold canonical_corner(double m_collar = 0.5, double m_exterior = 0.8) {
  const CollarExtension collar =
      build_collar(vacuum_boundary(3, m_collar, 2.0), CollarMode::cmc);
  const RotSymExterior ext = make_schwarzschild_exterior(m_exterior, 2.0, Dim(3));
  return glue(collar, ext);
}

}  // namespace

TEST_CASE("equality glue: both pieces of one vacuum manifold") {
  const CornerManifold c = canonical_corner(0.5, 0.5);
  CHECK(c.lapse == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(c.slope_jump) <= 1e-12);
  CHECK(c.H_minus == doctest::Approx(c.H_plus).epsilon(1e-12));
  CHECK(c.H_minus_data == doctest::Approx(c.H_minus).epsilon(1e-12));
  CHECK(std::abs(c.mass_jump) <= 1e-12);
  CHECK(c.metric_residual <= 1e-12);
  CHECK(c.corner_ok);
  CHECK(c.data_corner_ok);

  // One mass everywhere: the quasilocal reading is flat across the corner.
  for (double t : {0.9 * c.t_min(), 0.4 * c.t_min(), 0.0, 1.0, 0.5 * c.t_max()})
    CHECK(c.quasilocal_at(t) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(manifold_adm_mass(c) == doctest::Approx(0.5).epsilon(1e-12));

  // Warp continuity at the corner and the minimal end at t_min.
  CHECK(c.warp_at(0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.warp_at(-1e-9) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(c.warp_at(c.t_min()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(c.warp_slope_at(c.t_min())) <= 1e-9);
  CHECK_THROWS_AS(c.warp_at(c.t_min() - 0.1), input_error);
  CHECK_THROWS_AS(c.warp_slope_at(c.t_max() * 1.01), input_error);
}

TEST_CASE("strict glue: heavier exterior bends the corner the right way") {
  const CornerManifold c = canonical_corner(0.5, 0.8);
  CHECK(c.corner_ok);
  CHECK(c.slope_jump < 0.0);
  CHECK(c.slope_jump ==
        doctest::Approx(std::sqrt(0.2) - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(c.H_minus > c.H_plus);
  CHECK(c.mass_jump == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(c.quasilocal_at(-0.5) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(c.quasilocal_at(0.5) == doctest::Approx(0.8).epsilon(1e-8));
  CHECK(manifold_adm_mass(c) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("corner violation: lighter exterior is refused") {
  const CollarExtension collar = build_collar(vacuum_boundary(3, 0.5, 2.0), CollarMode::cmc);
  const RotSymExterior light = make_schwarzschild_exterior(0.2, 2.0, Dim(3));
  CHECK_THROWS_AS(glue(collar, light), inadmissible_error);
}

TEST_CASE("glue validation chain") {
  const CollarExtension collar = build_collar(vacuum_boundary(3, 0.5, 2.0), CollarMode::cmc);

  // Dimension mismatch.
  CHECK_THROWS_AS(glue(collar, make_schwarzschild_exterior(0.5, 2.0, Dim(4))), input_error);
  // Boundary radius mismatch.
  CHECK_THROWS_AS(glue(collar, make_schwarzschild_exterior(0.5, 2.1, Dim(3))), input_error);

  // Degenerate collar.
  const BoundaryData minimal =
      BoundaryData::homogeneous(Dim(3), 16.0 * std::numbers::pi, 0.5, 0.0);
  const CollarExtension degen = build_collar(minimal, CollarMode::cmc);
  CHECK_THROWS_AS(glue(degen, make_schwarzschild_exterior(0.5, 2.0, Dim(3))), input_error);

  // Tabulated data cannot be certified round.
  const BoundaryData tab = BoundaryData::tabulated(
      Dim(3), 16.0 * std::numbers::pi, {0.5}, {std::sqrt(0.5)});
  const CollarExtension tab_collar = build_collar(tab, CollarMode::cmc);
  CHECK_THROWS_AS(glue(tab_collar, make_schwarzschild_exterior(0.5, 2.0, Dim(3))),
                  input_error);

  // Visibly non-round axisym data.
  const BoundaryData oval = BoundaryData::axisym_metric(
      [](double t) { return 1.0 + 0.01 * std::sin(t) * std::sin(t); },
      [](double t) { return std::sin(t); }, [](double) { return 0.5; }, 513);
  const CollarExtension oval_collar = build_collar(oval, CollarMode::cmc);
  CHECK_THROWS_AS(
      glue(oval_collar, make_schwarzschild_exterior(0.2, oval.area_radius(), Dim(3))),
      input_error);

  // Round data but a latitude-dependent lapse (laplacian mode, varying H).
  const BoundaryData vary = BoundaryData::axisym_round(
      2.0, [](double t) { return 0.45 * (1.0 + 0.2 * std::cos(t)); }, 513);
  const CollarExtension vary_collar = build_collar(vary, CollarMode::laplacian);
  CHECK_THROWS_AS(glue(vary_collar, make_schwarzschild_exterior(0.5, 2.0, Dim(3))),
                  input_error);

  // Tampered collar fields are a violation, not bad input.
  CollarExtension tampered = collar;
  tampered.m *= 1.001;
  CHECK_THROWS_AS(glue(tampered, make_schwarzschild_exterior(0.8, 2.0, Dim(3))),
                  violation_error);
}

TEST_CASE("mollified corner: exact pieces, pinned distance, monotone mass") {
  const CornerManifold c = canonical_corner(0.5, 0.8);
  const double J = c.slope_jump;

  double prev_c0 = 1e30;
  for (double delta : {0.2, 0.1, 0.05}) {
    const MollifyReport rep = mollify_corner(c, delta);
    CHECK(rep.delta == delta);
    CHECK(rep.slope_jump == J);
    CHECK(rep.c0_distance == (5.0 / 32.0) * delta * std::abs(J));
    CHECK(rep.c0_distance < prev_c0);
    prev_c0 = rep.c0_distance;

    CHECK(rep.mass_monotone);
    CHECK(rep.end_mass == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(rep.min_zone_curvature >= -1e-6);

    // Untouched outside the zone, displaced by exactly the C^0 bound inside.
    double max_dev = 0.0;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
      const double t = rep.t[i];
      const double dev = std::abs(rep.w[i] - c.warp_at(t));
      max_dev = std::max(max_dev, dev);
      if (t <= -delta * (1.0 + 1e-12) || t >= delta * (1.0 - 1e-12))
        CHECK(dev <= 1e-13 * std::max(1.0, c.warp_at(t)));
    }
    CHECK(max_dev == doctest::Approx(rep.c0_distance).epsilon(1e-10));

    // The smoothed slope coincides with the pieces outside the zone and sits
    // halfway through the jump at the old corner (smooth step value 1/2).
    bool saw_center = false;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
      const double t = rep.t[i];
      if (t <= -delta || t >= delta)
        CHECK(std::abs(rep.wp[i] - c.warp_slope_at(t)) <= 1e-12);
      if (t == 0.0) {
        saw_center = true;
        CHECK(rep.wp[i] ==
              doctest::Approx(c.warp_slope_at(0.0) + 0.5 * J).epsilon(1e-12));
      }
    }
    CHECK(saw_center);
  }

  // Grid sanity: strictly increasing, spans the whole interval.
  const MollifyReport rep = mollify_corner(c, 0.1);
  REQUIRE(rep.t.size() == rep.w.size());
  REQUIRE(rep.t.size() == rep.wp.size());
  for (std::size_t i = 1; i < rep.t.size(); ++i) CHECK(rep.t[i] > rep.t[i - 1]);
  CHECK(rep.t.front() == doctest::Approx(c.t_min()).epsilon(1e-12));
  CHECK(rep.t.back() == doctest::Approx(c.t_max()).epsilon(1e-12));

  CHECK_THROWS_AS(mollify_corner(c, 0.0), input_error);
  CHECK_THROWS_AS(mollify_corner(c, 0.5 * std::min(-c.t_min(), c.t_max())), input_error);
}

TEST_CASE("mollifying an equality corner is a no-op up to rounding") {
  const CornerManifold c = canonical_corner(0.5, 0.5);
  const MollifyReport rep = mollify_corner(c, 0.1);
  CHECK(rep.c0_distance <= 1e-12);
  CHECK(rep.mass_monotone);
  CHECK(rep.end_mass == doctest::Approx(0.5).epsilon(1e-8));
}
