#include "collarforge/bounds.hpp"

#include <cmath>

#include "collarforge/errors.hpp"

namespace collarforge {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::penrose_minimal: return "penrose_minimal";
    case BoundKind::cmc: return "cmc";
    case BoundKind::laplacian: return "laplacian";
  }
  return "unknown";
}

double penrose_bound_minimal(double area, Dim n) {
  if (!(area > 0.0)) throw input_error("area must be positive");
  const double dn = static_cast<double>(n.value());
  return 0.5 * std::pow(area / unit_sphere_area(n), (dn - 2.0) / (dn - 1.0));
}

BoundReport mass_lower_bound(const BoundaryData& data, CollarMode mode) {
  BoundReport rep;
  rep.n = data.n();
  rep.boundary_area = data.area();
  if (data.mean_curvature_is_zero()) {
    rep.kind = BoundKind::penrose_minimal;
    rep.admissibility.verdict = Verdict::admissible;
    rep.admissibility.margin = 0.0;
    rep.theta = 0.0;
    rep.notes = "mean curvature vanishes identically: zero-length collar, minimal-boundary bound";
  } else {
    rep.kind = mode == CollarMode::cmc ? BoundKind::cmc : BoundKind::laplacian;
    rep.admissibility = mode == CollarMode::cmc ? check_cmc_condition(data)
                                                : check_laplacian_condition(data);
    rep.theta = theta(data, mode);  // throws inadmissible_error unless admissible
    if (rep.admissibility.extremum_at_grid_edge)
      rep.notes = "admissibility extremum sits at a pole node; refine the grid to trust the margin";
  }
  const double dn = static_cast<double>(rep.n.value());
  rep.minimal_end_area = rep.boundary_area * std::pow(1.0 - rep.theta, (dn - 1.0) / (dn - 2.0));
  rep.lower_bound = penrose_bound_minimal(rep.minimal_end_area, rep.n);
  return rep;
}

MultiBoundReport mass_lower_bound_multi(const std::vector<BoundaryData>& components,
                                        CollarMode mode) {
  if (components.empty()) throw input_error("no boundary components given");
  const Dim n = components.front().n();
  MultiBoundReport multi;
  for (const BoundaryData& data : components) {
    if (data.n() != n) throw input_error("boundary components must share one dimension");
    multi.components.push_back(mass_lower_bound(data, mode));
    multi.aggregate_minimal_area += multi.components.back().minimal_end_area;
  }
  multi.lower_bound = penrose_bound_minimal(multi.aggregate_minimal_area, n);
  multi.notes =
      "minimal-end areas add before the concave area-to-mass map is applied; "
      "this is never larger than mapping each component separately";
  return multi;
}

HawkingReport hawking_check(const BoundaryData& data) {
  if (data.n() != Dim(3)) throw input_error("Hawking mass comparison needs n = 3");
  const double sixteen_pi = 16.0 * M_PI;

  HawkingReport rep;
  rep.area = data.area();
  std::vector<double> h_sq(data.mean_curvature().size());
  for (std::size_t i = 0; i < h_sq.size(); ++i) {
    const double h = data.mean_curvature()[i];
    h_sq[i] = h * h;
  }
  rep.willmore_energy = data.integrate(h_sq) / sixteen_pi;
  rep.hawking_mass = std::sqrt(rep.area / sixteen_pi) * (1.0 - rep.willmore_energy);

  const BoundReport bound = mass_lower_bound(data, CollarMode::laplacian);
  rep.theta = bound.theta;
  rep.lower_bound = bound.lower_bound;

  const double tol = std::max(1e-10, Tolerances::active().ode);
  rep.chain_ok = rep.willmore_energy <= rep.theta + tol &&
                 rep.lower_bound <= rep.hawking_mass + tol * std::max(1.0, rep.hawking_mass);
  if (!rep.chain_ok)
    throw violation_error("Hawking mass chain broken: bound exceeded the Hawking mass");
  return rep;
}

EndToEndReport end_to_end_check(const RotSymExterior& ext, CollarMode mode) {
  EndToEndReport rep;
  rep.bound = mass_lower_bound(boundary_data_of_exterior(ext), mode);
  rep.adm_mass = manifold_adm_mass(ext);
  rep.slack = rep.adm_mass - rep.bound.lower_bound;
  if (rep.slack < -Tolerances::active().ode * std::max(1.0, std::abs(rep.adm_mass)))
    throw violation_error("ADM mass fell below the certified lower bound");
  return rep;
}

}  // namespace collarforge
