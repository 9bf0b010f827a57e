#include "collarforge/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "collarforge/errors.hpp"

namespace collarforge {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw input_error(std::string(what) + " contains a non-finite value");
}

// Composite Simpson over a uniform grid; the node count is kept odd by the
// axisym constructors.
double simpson_uniform(const std::vector<double>& f, double h) {
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); i += 2) odd += f[i];
  for (std::size_t i = 2; i + 1 < f.size(); i += 2) even += f[i];
  return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

void validate_axisym_arrays(const std::vector<double>& lambda, const std::vector<double>& mu,
                            const std::vector<double>& H) {
  const std::size_t N = lambda.size();
  if (N < 5 || N % 2 == 0)
    throw input_error("axisym grids need an odd node count of at least 5");
  if (mu.size() != N || H.size() != N)
    throw input_error("axisym sample arrays must share one length");
  require_finite(lambda, "metric lambda");
  require_finite(mu, "metric mu");
  require_finite(H, "mean curvature");
  double mu_max = 0.0;
  for (double m : mu) mu_max = std::max(mu_max, std::fabs(m));
  if (!(mu_max > 0.0)) throw input_error("axisym metric is degenerate (mu vanishes)");
  for (std::size_t i = 0; i < N; ++i) {
    if (!(lambda[i] > 0.0)) throw input_error("metric lambda must be positive");
    if (i > 0 && i + 1 < N && !(mu[i] > 0.0))
      throw input_error("metric mu must be positive away from the poles");
  }
  if (std::fabs(mu.front()) > 1e-8 * mu_max || std::fabs(mu.back()) > 1e-8 * mu_max)
    throw input_error("axisym metric must close at the poles (mu(0) = mu(pi) = 0)");
}

// Scalar curvature of lambda^2 dt^2 + mu^2 dphi^2 from samples: R = 2K with
// K = -(mu'/lambda)' / (lambda mu). Latitude derivatives are central; the
// poles use the even/odd reflection structure of an axisymmetric metric.
std::vector<double> axisym_scalar_curvature_fd(const std::vector<double>& lambda,
                                               const std::vector<double>& mu, double h) {
  const std::size_t N = lambda.size();
  std::vector<double> w(N);  // mu'/lambda
  w[0] = (mu[1] / h) / lambda[0];
  w[N - 1] = (-mu[N - 2] / h) / lambda[N - 1];
  for (std::size_t i = 1; i + 1 < N; ++i) w[i] = (mu[i + 1] - mu[i - 1]) / (2.0 * h) / lambda[i];

  std::vector<double> R(N);
  for (std::size_t i = 1; i + 1 < N; ++i)
    R[i] = 2.0 * (-(w[i + 1] - w[i - 1]) / (2.0 * h)) / (lambda[i] * mu[i]);
  // K(pole) = -w''/(lambda^2 w): w is even across a smooth pole and mu' there
  // equals lambda w, whichever sign w carries.
  R[0] = 2.0 * (-2.0 * (w[1] - w[0]) / (h * h)) / (lambda[0] * lambda[0] * w[0]);
  R[N - 1] =
      2.0 * (-2.0 * (w[N - 2] - w[N - 1]) / (h * h)) / (lambda[N - 1] * lambda[N - 1] * w[N - 1]);
  return R;
}

double env_tolerance_override() {
  const char* raw = std::getenv("COLLARFORGE_TOL");
  if (raw == nullptr) return 0.0;
  char* end = nullptr;
  const double value = std::strtod(raw, &end);
  if (end == raw || !std::isfinite(value) || value <= 0.0) return 0.0;
  return value;
}

double coefficient(Dim n) {
  return static_cast<double>(n.value() - 2) / static_cast<double>(n.value() - 1);
}

}  // namespace

const char* to_string(CollarMode mode) {
  return mode == CollarMode::cmc ? "cmc" : "laplacian";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::admissible: return "admissible";
    case Verdict::inadmissible_equality: return "inadmissible_equality";
    case Verdict::inadmissible_violated: return "inadmissible_violated";
    case Verdict::requires_positive_H: return "requires_positive_H";
  }
  return "unknown";
}

const char* to_string(BoundaryBackend backend) {
  switch (backend) {
    case BoundaryBackend::homogeneous: return "homogeneous";
    case BoundaryBackend::axisym_s2: return "axisym_s2";
    case BoundaryBackend::tabulated: return "tabulated";
  }
  return "unknown";
}

Tolerances Tolerances::active() {
  Tolerances t;
  if (const double v = env_tolerance_override(); v > 0.0) {
    t.algebraic = v;
    t.ode = 100.0 * v;
    t.band = 10.0 * v;
  }
  return t;
}

BoundaryData BoundaryData::homogeneous(Dim n, double area, double scalar_curvature,
                                       double mean_curvature) {
  if (!(area > 0.0) || !std::isfinite(area)) throw input_error("area must be positive");
  if (!std::isfinite(scalar_curvature) || !std::isfinite(mean_curvature))
    throw input_error("homogeneous fields must be finite");
  BoundaryData d(n);
  d.backend_ = BoundaryBackend::homogeneous;
  d.area_ = area;
  d.scalar_curvature_ = {scalar_curvature};
  d.mean_curvature_ = {mean_curvature};
  return d;
}

BoundaryData BoundaryData::axisym_round(double radius,
                                        const std::function<double(double)>& mean_curvature,
                                        std::size_t nodes) {
  if (!(radius > 0.0)) throw input_error("sphere radius must be positive");
  if (nodes < 5 || nodes % 2 == 0)
    throw input_error("axisym grids need an odd node count of at least 5");
  const double h = kPi / static_cast<double>(nodes - 1);
  std::vector<double> lambda(nodes, radius), mu(nodes), H(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = h * static_cast<double>(i);
    mu[i] = radius * std::sin(t);
    H[i] = mean_curvature(t);
  }
  mu.front() = 0.0;
  mu.back() = 0.0;
  BoundaryData d = axisym_samples(std::move(lambda), std::move(mu), std::move(H),
                                  std::vector<double>(nodes, 2.0 / (radius * radius)));
  // Roundness is exact here, so the closed-form area replaces the quadrature.
  d.area_ = unit_sphere_area(Dim(3)) * radius * radius;
  return d;
}

BoundaryData BoundaryData::axisym_metric(
    const std::function<double(double)>& lambda_fn, const std::function<double(double)>& mu_fn,
    const std::function<double(double)>& mean_curvature, std::size_t nodes,
    const std::function<double(double)>* scalar_curvature) {
  if (nodes < 5 || nodes % 2 == 0)
    throw input_error("axisym grids need an odd node count of at least 5");
  const double h = kPi / static_cast<double>(nodes - 1);
  std::vector<double> lambda(nodes), mu(nodes), H(nodes);
  std::optional<std::vector<double>> R;
  if (scalar_curvature != nullptr) R.emplace(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = h * static_cast<double>(i);
    lambda[i] = lambda_fn(t);
    mu[i] = mu_fn(t);
    H[i] = mean_curvature(t);
    if (R) (*R)[i] = (*scalar_curvature)(t);
  }
  return axisym_samples(std::move(lambda), std::move(mu), std::move(H), std::move(R));
}

BoundaryData BoundaryData::axisym_samples(std::vector<double> lambda, std::vector<double> mu,
                                          std::vector<double> mean_curvature,
                                          std::optional<std::vector<double>> scalar_curvature,
                                          std::optional<double> declared_area) {
  validate_axisym_arrays(lambda, mu, mean_curvature);
  const std::size_t N = lambda.size();
  const double h = kPi / static_cast<double>(N - 1);

  BoundaryData d{Dim(3)};
  d.backend_ = BoundaryBackend::axisym_s2;
  if (scalar_curvature) {
    if (scalar_curvature->size() != N)
      throw input_error("scalar curvature array must match the grid");
    require_finite(*scalar_curvature, "scalar curvature");
    d.scalar_curvature_ = std::move(*scalar_curvature);
  } else {
    d.scalar_curvature_ = axisym_scalar_curvature_fd(lambda, mu, h);
  }
  d.mean_curvature_ = std::move(mean_curvature);
  d.lambda_ = std::move(lambda);
  d.mu_ = std::move(mu);
  d.latitudes_.resize(N);
  for (std::size_t i = 0; i < N; ++i) d.latitudes_[i] = h * static_cast<double>(i);

  std::vector<double> meas(N);
  for (std::size_t i = 0; i < N; ++i) meas[i] = d.lambda_[i] * d.mu_[i];
  d.area_ = 2.0 * kPi * simpson_uniform(meas, h);
  if (declared_area) {
    if (!(*declared_area > 0.0)) throw input_error("area must be positive");
    if (std::fabs(*declared_area - d.area_) > 1e-6 * d.area_)
      throw input_error("declared area disagrees with the metric's own area");
    d.area_ = *declared_area;
  }
  return d;
}

BoundaryData BoundaryData::tabulated(Dim n, double area, std::vector<double> scalar_curvature,
                                     std::vector<double> mean_curvature,
                                     std::optional<std::vector<double>> lap_inv_mean_curvature) {
  if (!(area > 0.0) || !std::isfinite(area)) throw input_error("area must be positive");
  if (scalar_curvature.empty() || scalar_curvature.size() != mean_curvature.size())
    throw input_error("tabulated fields must be nonempty and sample-aligned");
  if (lap_inv_mean_curvature && lap_inv_mean_curvature->size() != mean_curvature.size())
    throw input_error("tabulated fields must be nonempty and sample-aligned");
  require_finite(scalar_curvature, "scalar curvature");
  require_finite(mean_curvature, "mean curvature");
  if (lap_inv_mean_curvature) require_finite(*lap_inv_mean_curvature, "lap_H_inv");
  BoundaryData d(n);
  d.backend_ = BoundaryBackend::tabulated;
  d.area_ = area;
  d.scalar_curvature_ = std::move(scalar_curvature);
  d.mean_curvature_ = std::move(mean_curvature);
  d.lap_inv_mean_curvature_ = std::move(lap_inv_mean_curvature);
  return d;
}

double BoundaryData::area_radius() const { return collarforge::area_radius(area_, n_); }

const std::vector<double>& BoundaryData::latitudes() const {
  if (backend_ != BoundaryBackend::axisym_s2)
    throw input_error("latitude grid exists only for the axisym backend");
  return latitudes_;
}

const std::vector<double>& BoundaryData::metric_lambda() const {
  if (backend_ != BoundaryBackend::axisym_s2)
    throw input_error("metric samples exist only for the axisym backend");
  return lambda_;
}

const std::vector<double>& BoundaryData::metric_mu() const {
  if (backend_ != BoundaryBackend::axisym_s2)
    throw input_error("metric samples exist only for the axisym backend");
  return mu_;
}

bool BoundaryData::mean_curvature_is_zero() const {
  return std::all_of(mean_curvature_.begin(), mean_curvature_.end(),
                     [](double v) { return v == 0.0; });
}

double BoundaryData::max_mean_curvature() const {
  return *std::max_element(mean_curvature_.begin(), mean_curvature_.end());
}

double BoundaryData::min_mean_curvature() const {
  return *std::min_element(mean_curvature_.begin(), mean_curvature_.end());
}

double BoundaryData::round_deviation() const {
  const double r_o = area_radius();
  switch (backend_) {
    case BoundaryBackend::homogeneous: {
      const double d = static_cast<double>(n_.value());
      const double round_R = (d - 1.0) * (d - 2.0) / (r_o * r_o);
      return std::fabs(scalar_curvature_[0] - round_R) / round_R;
    }
    case BoundaryBackend::axisym_s2: {
      double dev = 0.0;
      for (std::size_t i = 0; i < lambda_.size(); ++i) {
        dev = std::max(dev, std::fabs(lambda_[i] - r_o));
        dev = std::max(dev, std::fabs(mu_[i] - r_o * std::sin(latitudes_[i])));
      }
      return dev / r_o;
    }
    case BoundaryBackend::tabulated:
      throw input_error("tabulated data carries no metric to compare with the round sphere");
  }
  return 0.0;
}

double BoundaryData::integrate(const std::vector<double>& field_values) const {
  if (field_values.size() != sample_count())
    throw input_error("field length does not match the sample set");
  switch (backend_) {
    case BoundaryBackend::homogeneous:
      return area_ * field_values[0];
    case BoundaryBackend::axisym_s2: {
      const double h = latitudes_[1] - latitudes_[0];
      std::vector<double> f(field_values.size());
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = field_values[i] * lambda_[i] * mu_[i];
      return 2.0 * kPi * simpson_uniform(f, h);
    }
    case BoundaryBackend::tabulated:
      throw input_error("tabulated samples carry no quadrature measure");
  }
  return 0.0;
}

BoundaryData BoundaryData::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw input_error("scale factor must be positive");
  BoundaryData d = *this;
  const double d_n = static_cast<double>(n_.value());
  d.area_ = area_ * std::pow(factor, d_n - 1.0);
  for (double& v : d.scalar_curvature_) v /= factor * factor;
  for (double& v : d.mean_curvature_) v /= factor;
  if (d.lap_inv_mean_curvature_)
    for (double& v : *d.lap_inv_mean_curvature_) v /= factor;
  for (double& v : d.lambda_) v *= factor;
  for (double& v : d.mu_) v *= factor;
  return d;
}

BoundaryField laplace_beltrami(const BoundaryData& data, const BoundaryField& field) {
  if (field.values.size() != data.sample_count())
    throw input_error("field length does not match the sample set");
  BoundaryField out;
  out.units = field.units.empty() ? "1/length^2" : field.units + " * 1/length^2";

  switch (data.backend()) {
    case BoundaryBackend::homogeneous:
      out.values = {0.0};
      return out;

    case BoundaryBackend::tabulated: {
      if (!data.lap_inv_mean_curvature_)
        throw input_error("tabulated data stores no Laplacian field");
      const auto& H = data.mean_curvature();
      for (std::size_t i = 0; i < H.size(); ++i) {
        if (H[i] == 0.0 || std::fabs(field.values[i] - 1.0 / H[i]) >
                               1e-12 * std::fabs(1.0 / H[i]))
          throw input_error(
              "tabulated Laplacian is available only for the inverse mean curvature field");
      }
      out.values = *data.lap_inv_mean_curvature_;
      return out;
    }

    case BoundaryBackend::axisym_s2: {
      const auto& lam = data.lambda_;
      const auto& mu = data.mu_;
      const auto& f = field.values;
      const std::size_t N = f.size();
      const double h = data.latitudes_[1] - data.latitudes_[0];
      out.values.assign(N, 0.0);

      // Flux form: constants are annihilated exactly because every term is a
      // difference of neighboring samples.
      std::vector<double> w(N);
      for (std::size_t i = 0; i < N; ++i) w[i] = mu[i] / lam[i];
      for (std::size_t i = 1; i + 1 < N; ++i) {
        const double wp = 0.5 * (w[i] + w[i + 1]);
        const double wm = 0.5 * (w[i - 1] + w[i]);
        out.values[i] =
            (wp * (f[i + 1] - f[i]) - wm * (f[i] - f[i - 1])) / (h * h * lam[i] * mu[i]);
      }
      // Poles: the operator limit is 2 f''/lambda^2 for evenly extendable
      // fields, independent of any cone defect in mu.
      out.values[0] = 4.0 * (f[1] - f[0]) / (h * h * lam[0] * lam[0]);
      out.values[N - 1] = 4.0 * (f[N - 2] - f[N - 1]) / (h * h * lam[N - 1] * lam[N - 1]);
      return out;
    }
  }
  throw input_error("unknown backend");
}

Admissibility check_cmc_condition(const BoundaryData& data) {
  const Tolerances tol = Tolerances::active();
  const auto& H = data.mean_curvature();
  const auto& R = data.scalar_curvature();
  const std::size_t N = H.size();

  Admissibility a;
  double h_min = H[0], h_max = H[0];
  std::size_t h_argmin = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (H[i] < h_min) { h_min = H[i]; h_argmin = i; }
    h_max = std::max(h_max, H[i]);
  }
  a.h_has_zeros = !data.mean_curvature_is_zero() && h_min <= tol.band;

  if (h_min < -tol.band) {
    a.verdict = Verdict::requires_positive_H;
    a.margin = 0.0;
    a.witness = h_argmin;
    return a;
  }

  std::size_t r_argmin = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (R[i] < R[r_argmin]) r_argmin = i;
  a.margin = R[r_argmin] - coefficient(data.n()) * h_max * h_max;
  a.witness = r_argmin;
  a.extremum_at_grid_edge = data.backend() == BoundaryBackend::axisym_s2 &&
                            (r_argmin == 0 || r_argmin + 1 == N);
  a.verdict = std::fabs(a.margin) <= tol.band ? Verdict::inadmissible_equality
              : a.margin > 0.0                ? Verdict::admissible
                                              : Verdict::inadmissible_violated;
  return a;
}

Admissibility check_laplacian_condition(const BoundaryData& data) {
  const Tolerances tol = Tolerances::active();
  const auto& H = data.mean_curvature();
  const auto& R = data.scalar_curvature();
  const std::size_t N = H.size();

  Admissibility a;
  for (std::size_t i = 0; i < N; ++i) {
    if (H[i] <= 0.0) {
      a.verdict = Verdict::requires_positive_H;
      a.margin = 0.0;
      a.witness = i;
      return a;
    }
  }

  BoundaryField inv_h;
  inv_h.units = "length";
  inv_h.values.resize(N);
  for (std::size_t i = 0; i < N; ++i) inv_h.values[i] = 1.0 / H[i];
  const BoundaryField lap = laplace_beltrami(data, inv_h);

  const double c = coefficient(data.n());
  a.margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; ++i) {
    const double slack = R[i] - 2.0 * H[i] * lap.values[i] - c * H[i] * H[i];
    if (slack < a.margin) { a.margin = slack; a.witness = i; }
  }
  a.extremum_at_grid_edge = data.backend() == BoundaryBackend::axisym_s2 &&
                            (a.witness == 0 || a.witness + 1 == N);
  a.verdict = std::fabs(a.margin) <= tol.band ? Verdict::inadmissible_equality
              : a.margin > 0.0                ? Verdict::admissible
                                              : Verdict::inadmissible_violated;
  return a;
}

double theta(const BoundaryData& data, CollarMode mode) {
  if (data.mean_curvature_is_zero()) return 0.0;
  const double c = coefficient(data.n());

  if (mode == CollarMode::cmc) {
    const Admissibility a = check_cmc_condition(data);
    if (!a.admissible()) {
      std::ostringstream msg;
      msg << "boundary data fails the cmc admissibility check (" << to_string(a.verdict)
          << ", margin " << a.margin << ")";
      throw inadmissible_error(msg.str());
    }
    const double h_max = data.max_mean_curvature();
    const double r_min = *std::min_element(data.scalar_curvature().begin(),
                                           data.scalar_curvature().end());
    return c * h_max * h_max / r_min;
  }

  const Admissibility a = check_laplacian_condition(data);
  if (!a.admissible()) {
    std::ostringstream msg;
    msg << "boundary data fails the laplacian admissibility check (" << to_string(a.verdict)
        << ", margin " << a.margin << ")";
    throw inadmissible_error(msg.str());
  }
  const auto& H = data.mean_curvature();
  const auto& R = data.scalar_curvature();
  BoundaryField inv_h;
  inv_h.values.resize(H.size());
  for (std::size_t i = 0; i < H.size(); ++i) inv_h.values[i] = 1.0 / H[i];
  const BoundaryField lap = laplace_beltrami(data, inv_h);

  double value = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i)
    value = std::max(value, c * H[i] * H[i] / (R[i] - 2.0 * H[i] * lap.values[i]));
  return value;
}

CollarParameters collar_parameters(const BoundaryData& data, double theta_value,
                                   CollarMode mode) {
  if (!(theta_value >= 0.0) || theta_value >= 1.0)
    throw input_error("deficit parameter must lie in [0, 1)");
  const double d_n = static_cast<double>(data.n().value());
  const double r_o = data.area_radius();

  CollarParameters p;
  p.m = 0.5 * std::pow(r_o, d_n - 2.0) * (1.0 - theta_value);
  p.A.units = "dimensionless";
  p.A.values.assign(data.sample_count(), 0.0);
  if (theta_value == 0.0) return p;  // degenerate minimal boundary, lapse unused

  const double root = (d_n - 1.0) * std::sqrt(theta_value) / r_o;
  if (mode == CollarMode::cmc) {
    const double h_o = data.max_mean_curvature();
    if (!(h_o > 0.0)) throw inadmissible_error("lapse needs a positive mean curvature");
    std::fill(p.A.values.begin(), p.A.values.end(), root / h_o);
  } else {
    const auto& H = data.mean_curvature();
    for (std::size_t i = 0; i < H.size(); ++i) {
      if (!(H[i] > 0.0)) throw inadmissible_error("lapse needs a positive mean curvature");
      p.A.values[i] = root / H[i];
    }
  }
  return p;
}

}  // namespace collarforge
