#pragma once

#include <string>
#include <vector>

#include "collarforge/boundary.hpp"
#include "collarforge/exterior.hpp"

namespace collarforge {

// Which form of the mass lower bound a report certifies: the minimal-boundary
// bound (zero mean curvature, zero-length collar), or the collar bound under
// the constant-H or Laplacian admissibility condition.
enum class BoundKind { penrose_minimal, cmc, laplacian };

const char* to_string(BoundKind kind);

// 0.5 (area / omega_{n-1})^{(n-2)/(n-1)}, the mass of the Schwarzschild
// manifold whose horizon has the given area.
double penrose_bound_minimal(double area, Dim n);

struct BoundReport {
  BoundKind kind = BoundKind::penrose_minimal;
  Dim n{3};
  Admissibility admissibility;
  double theta = 0.0;           // collar deficit parameter
  double boundary_area = 0.0;
  double minimal_end_area = 0.0;  // boundary_area * (1 - theta)^{(n-1)/(n-2)}
  double lower_bound = 0.0;       // always penrose_bound_minimal(minimal_end_area)
  std::string notes;
};

// ADM mass lower bound certified by the collar construction for admissible
// data; throws inadmissible_error when the mode's condition fails. Identically
// vanishing mean curvature short-circuits to the minimal-boundary bound.
BoundReport mass_lower_bound(const BoundaryData& data, CollarMode mode);

struct MultiBoundReport {
  std::vector<BoundReport> components;
  double aggregate_minimal_area = 0.0;
  double lower_bound = 0.0;
  std::string notes;
};

// Bound for a boundary with several components: minimal-end areas add first,
// then the area-to-mass map is applied once. The map is concave, so this
// never exceeds the sum of per-component bounds, and a single component
// reduces to mass_lower_bound exactly.
MultiBoundReport mass_lower_bound_multi(const std::vector<BoundaryData>& components,
                                        CollarMode mode);

struct HawkingReport {
  double area = 0.0;
  double willmore_energy = 0.0;  // integral of H^2 over the surface, divided by 16 pi
  double hawking_mass = 0.0;     // sqrt(area / 16 pi) (1 - willmore_energy)
  double theta = 0.0;
  double lower_bound = 0.0;
  bool chain_ok = false;  // willmore_energy <= theta and lower_bound <= hawking_mass
};

// n = 3 comparison chain: for admissible data the Willmore energy is capped
// by theta, so the collar bound never exceeds the Hawking mass. A broken
// chain is a certified inequality failing and throws violation_error.
HawkingReport hawking_check(const BoundaryData& data);

struct EndToEndReport {
  BoundReport bound;
  double adm_mass = 0.0;
  double slack = 0.0;  // adm_mass - lower_bound, zero only for constant mass profiles
};

// Reads boundary data off the exterior's inner sphere, bounds the mass from
// it, and compares against the manifold's ADM mass. The bound exceeding the
// ADM mass would falsify the inequality and throws violation_error.
EndToEndReport end_to_end_check(const RotSymExterior& ext, CollarMode mode);

}  // namespace collarforge
