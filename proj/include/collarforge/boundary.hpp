#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "collarforge/geometry.hpp"

namespace collarforge {

// Discrete representation of closed boundary data: an (n-1)-manifold carrying
// a scalar curvature field, a mean curvature field, and enough structure to
// apply the Laplace-Beltrami operator where a backend supports it.

enum class CollarMode { cmc, laplacian };

const char* to_string(CollarMode mode);

struct BoundaryField {
  std::vector<double> values;
  std::string units;  // geometric units (G = c = 1), e.g. "1/length" for mean curvature
};

enum class Verdict {
  admissible,
  inadmissible_equality,  // strict inequality fails only by the tolerance band
  inadmissible_violated,
  requires_positive_H,
};

const char* to_string(Verdict verdict);

struct Admissibility {
  Verdict verdict = Verdict::inadmissible_violated;
  double margin = 0.0;       // minimum slack of the strict inequality, units 1/length^2
  std::size_t witness = 0;   // sample index attaining the minimum
  bool h_has_zeros = false;  // H >= 0 with zeros but not identically zero
  bool extremum_at_grid_edge = false;  // witness sits at a pole node: refine to trust it

  bool admissible() const { return verdict == Verdict::admissible; }
};

enum class BoundaryBackend { homogeneous, axisym_s2, tabulated };

const char* to_string(BoundaryBackend backend);

class BoundaryData {
 public:
  // Constant fields, any dimension.
  static BoundaryData homogeneous(Dim n, double area, double scalar_curvature,
                                  double mean_curvature);

  // Round 2-sphere of the given radius with an axisymmetric mean curvature
  // profile sampled on a uniform latitude grid (node count odd, >= 5).
  static BoundaryData axisym_round(double radius,
                                   const std::function<double(double)>& mean_curvature,
                                   std::size_t nodes = 1025);

  // General axisymmetric 2-sphere lambda(t)^2 dt^2 + mu(t)^2 dphi^2, t in [0, pi].
  // Scalar curvature is derived by finite differences unless supplied in closed
  // form; poles require smooth even/odd extendability of lambda/mu.
  static BoundaryData axisym_metric(
      const std::function<double(double)>& lambda_fn,
      const std::function<double(double)>& mu_fn,
      const std::function<double(double)>& mean_curvature,
      std::size_t nodes = 1025,
      const std::function<double(double)>* scalar_curvature = nullptr);

  // Same backend built from already-sampled arrays (uniform latitude grid
  // implied by the array length). Used by the JSON loader.
  static BoundaryData axisym_samples(std::vector<double> lambda, std::vector<double> mu,
                                     std::vector<double> mean_curvature,
                                     std::optional<std::vector<double>> scalar_curvature,
                                     std::optional<double> declared_area = std::nullopt);

  // Sample set with no metric or measure attached; the Laplacian of the
  // inverse mean curvature must be precomputed if the laplacian mode is wanted.
  static BoundaryData tabulated(Dim n, double area, std::vector<double> scalar_curvature,
                                std::vector<double> mean_curvature,
                                std::optional<std::vector<double>> lap_inv_mean_curvature =
                                    std::nullopt);

  Dim n() const { return n_; }
  BoundaryBackend backend() const { return backend_; }
  double area() const { return area_; }
  double area_radius() const;
  std::size_t sample_count() const { return mean_curvature_.size(); }

  // Sample-aligned fields (a single sample for the homogeneous backend).
  const std::vector<double>& scalar_curvature() const { return scalar_curvature_; }
  const std::vector<double>& mean_curvature() const { return mean_curvature_; }
  bool has_lap_inv_mean_curvature() const { return lap_inv_mean_curvature_.has_value(); }

  // Axisymmetric backend only (throws input_error otherwise).
  const std::vector<double>& latitudes() const;
  const std::vector<double>& metric_lambda() const;
  const std::vector<double>& metric_mu() const;

  bool mean_curvature_is_zero() const;  // H identically zero (exact)
  double max_mean_curvature() const;
  double min_mean_curvature() const;

  // Largest relative deviation of the induced metric from the round sphere of
  // the same area radius; 0 when roundness is built in, throws input_error for
  // the tabulated backend (nothing to certify).
  double round_deviation() const;

  // integral of a sample-aligned field against the area measure; tabulated
  // samples carry no measure, so integration is refused there.
  double integrate(const std::vector<double>& field_values) const;

  // Push-forward of the data under g -> factor^2 g, H -> H / factor.
  BoundaryData scaled(double factor) const;

 private:
  explicit BoundaryData(Dim n) : n_(n) {}

  Dim n_;
  BoundaryBackend backend_ = BoundaryBackend::homogeneous;
  double area_ = 0.0;
  std::vector<double> scalar_curvature_;
  std::vector<double> mean_curvature_;
  std::optional<std::vector<double>> lap_inv_mean_curvature_;
  // axisym_s2 only
  std::vector<double> latitudes_, lambda_, mu_;

  friend BoundaryField laplace_beltrami(const BoundaryData&, const BoundaryField&);
};

// Discrete Laplace-Beltrami operator. Homogeneous data: zero field (constants
// only). Axisymmetric data: 1/(lambda mu) d/dt((mu/lambda) d/dt) in flux form,
// second order, poles regularized; annihilates constants exactly. Tabulated
// data: returns the stored field when the input matches 1/H, errors otherwise.
BoundaryField laplace_beltrami(const BoundaryData& data, const BoundaryField& field);

// Admissibility of the constant-mean-curvature route: the slack of
// min R_g > ((n-2)/(n-1)) (max H)^2, H >= 0 required.
Admissibility check_cmc_condition(const BoundaryData& data);

// Admissibility of the Laplacian route: pointwise slack of
// R_g - 2 H lap(1/H) - ((n-2)/(n-1)) H^2 > 0, H > 0 required.
Admissibility check_laplacian_condition(const BoundaryData& data);

// Deficit parameter in [0, 1): the largest fraction of the curvature budget
// consumed by the mean curvature term; 0 for a minimal boundary.
double theta(const BoundaryData& data, CollarMode mode);

struct CollarParameters {
  double m = 0.0;   // mass of the matching rotationally symmetric profile
  BoundaryField A;  // lapse field over the boundary samples (zeros when theta = 0)
};

// Mass m = r_o^{n-2}(1 - theta)/2 and lapse A = (n-1) sqrt(theta)/(H r_o);
// the cmc mode uses the constant max H in place of H.
CollarParameters collar_parameters(const BoundaryData& data, double theta_value,
                                   CollarMode mode);

// Tolerance knobs shared across the library. Defaults: algebraic 1e-10,
// ODE-coupled 1e-8, strictness band 1e-9. The COLLARFORGE_TOL environment
// variable rescales all three (value = algebraic tolerance; the others keep
// their default ratios of 100x and 10x).
struct Tolerances {
  double algebraic = 1e-10;
  double ode = 1e-8;
  double band = 1e-9;

  static Tolerances active();  // defaults adjusted by COLLARFORGE_TOL
};

}  // namespace collarforge
