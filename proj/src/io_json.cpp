#include "collarforge/io_json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>

#include "collarforge/errors.hpp"

namespace collarforge {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw input_error(std::string("missing field: ") + key);
  return *it;
}

double require_number(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw input_error(std::string("field must be a number: ") + key);
  return v.get<double>();
}

int require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw input_error(std::string("field must be an integer: ") + key);
  return v.get<int>();
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw input_error(std::string("field must be a string: ") + key);
  return v.get<std::string>();
}

std::vector<double> number_array(const json& v, const char* key) {
  if (!v.is_array() || v.empty())
    throw input_error(std::string("field must be a nonempty array: ") + key);
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) throw input_error(std::string("array must hold numbers: ") + key);
    out.push_back(x.get<double>());
  }
  return out;
}

// "schema" is advisory: validated when present, optional otherwise.
void check_schema(const json& j, const char* expect) {
  const auto it = j.find("schema");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != expect)
    throw input_error(std::string("wrong schema, expected ") + expect);
}

json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

BoundaryData load_one_boundary(const json& j) {
  if (!j.is_object()) throw input_error("boundary data must be a JSON object");
  check_schema(j, "boundary_data/v1");
  const Dim n(require_int(j, "n"));
  const std::string backend = require_string(j, "backend");

  if (backend == "homogeneous")
    return BoundaryData::homogeneous(n, require_number(j, "area"), require_number(j, "R_g"),
                                     require_number(j, "H"));

  if (backend == "axisym_s2") {
    if (n != Dim(3)) throw input_error("axisym_s2 backend needs n = 3");
    auto lambda = number_array(require(j, "lambda"), "lambda");
    auto mu = number_array(require(j, "mu"), "mu");
    auto h = number_array(require(j, "H"), "H");
    std::optional<std::vector<double>> r_g;
    if (j.contains("R_g")) r_g = number_array(j.at("R_g"), "R_g");
    std::optional<double> declared_area;
    if (j.contains("area")) declared_area = require_number(j, "area");
    if (j.contains("theta_grid")) {
      const auto grid = number_array(j.at("theta_grid"), "theta_grid");
      if (grid.size() != h.size())
        throw input_error("theta_grid length must match the sample arrays");
      const double step = M_PI / static_cast<double>(grid.size() - 1);
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - step * static_cast<double>(i)) > 1e-12)
          throw input_error("theta_grid must be the uniform latitude grid on [0, pi]");
    }
    return BoundaryData::axisym_samples(std::move(lambda), std::move(mu), std::move(h),
                                        std::move(r_g), declared_area);
  }

  if (backend == "tabulated") {
    auto r_g = number_array(require(j, "R_g"), "R_g");
    auto h = number_array(require(j, "H"), "H");
    std::optional<std::vector<double>> lap;
    if (j.contains("lap_H_inv")) lap = number_array(j.at("lap_H_inv"), "lap_H_inv");
    return BoundaryData::tabulated(n, require_number(j, "area"), std::move(r_g), std::move(h),
                                   std::move(lap));
  }

  throw input_error("unknown backend: " + backend);
}

json admissibility_json(const Admissibility& a) {
  return json{{"verdict", to_string(a.verdict)},
              {"margin", a.margin},
              {"witness", a.witness},
              {"h_has_zeros", a.h_has_zeros},
              {"extremum_at_grid_edge", a.extremum_at_grid_edge}};
}

}  // namespace

std::vector<BoundaryData> load_boundary_components(const json& j) {
  if (!j.is_object()) throw input_error("boundary data must be a JSON object");
  if (j.contains("components")) {
    check_schema(j, "boundary_data/v1");
    const json& comps = j.at("components");
    if (!comps.is_array() || comps.empty())
      throw input_error("components must be a nonempty array");
    std::vector<BoundaryData> out;
    out.reserve(comps.size());
    for (const json& c : comps) out.push_back(load_one_boundary(c));
    return out;
  }
  return {load_one_boundary(j)};
}

std::vector<BoundaryData> load_boundary_file(const std::string& path) {
  return load_boundary_components(parse_file(path));
}

RotSymExterior load_exterior(const json& j) {
  if (!j.is_object()) throw input_error("exterior spec must be a JSON object");
  check_schema(j, "exterior/v1");
  const Dim n(require_int(j, "n"));
  const double r_o = require_number(j, "r_o");
  const std::string kind = require_string(j, "kind");

  if (kind == "schwarzschild") return make_schwarzschild_exterior(require_number(j, "m"), r_o, n);

  if (kind == "generated") {
    const json& table = require(j, "mass_table");
    if (!table.is_object()) throw input_error("mass_table must be an object with s and m arrays");
    const auto s = number_array(require(table, "s"), "mass_table.s");
    const auto m = number_array(require(table, "m"), "mass_table.m");
    if (s.size() != m.size()) throw input_error("mass_table arrays must have equal length");
    if (s.front() < 0.0) throw input_error("mass_table knots must start at s >= 0");
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] <= s[i - 1]) throw input_error("mass_table knots must ascend");
      if (m[i] < m[i - 1]) throw input_error("mass_table masses must be nondecreasing");
    }
    const double s_max = j.contains("s_max") ? require_number(j, "s_max") : 0.0;
    // Piecewise linear between knots, constant beyond the ends.
    const auto mass_fn = [s, m](double sv) {
      if (sv <= s.front()) return m.front();
      if (sv >= s.back()) return m.back();
      const auto it = std::upper_bound(s.begin(), s.end(), sv);
      const std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
      const double w = (sv - s[i]) / (s[i + 1] - s[i]);
      return (1.0 - w) * m[i] + w * m[i + 1];
    };
    return make_generated_exterior(mass_fn, r_o, n, s.back(), s_max);
  }

  throw input_error("unknown exterior kind: " + kind);
}

RotSymExterior load_exterior_file(const std::string& path) {
  return load_exterior(parse_file(path));
}

AsymptoticMetricSpec load_metric_spec(const json& j) {
  if (!j.is_object()) throw input_error("metric spec must be a JSON object");
  check_schema(j, "metric_spec/v1");
  const Dim n(require_int(j, "n"));
  const std::string family = require_string(j, "family");
  if (family == "flat") return AsymptoticMetricSpec::flat(n);
  if (family == "isotropic_schwarzschild")
    return AsymptoticMetricSpec::isotropic_schwarzschild(n, require_number(j, "mass"));
  throw input_error("unknown metric family: " + family);
}

AsymptoticMetricSpec load_metric_spec_file(const std::string& path) {
  return load_metric_spec(parse_file(path));
}

json report_json(const BoundReport& rep) {
  return json{{"schema", "bound_report/v1"},
              {"kind", to_string(rep.kind)},
              {"n", rep.n.value()},
              {"admissibility", admissibility_json(rep.admissibility)},
              {"theta", rep.theta},
              {"boundary_area", rep.boundary_area},
              {"minimal_end_area", rep.minimal_end_area},
              {"lower_bound", rep.lower_bound},
              {"notes", rep.notes}};
}

json report_json(const MultiBoundReport& rep) {
  json comps = json::array();
  for (const BoundReport& c : rep.components) comps.push_back(report_json(c));
  return json{{"schema", "multi_bound_report/v1"},
              {"components", std::move(comps)},
              {"aggregate_minimal_area", rep.aggregate_minimal_area},
              {"lower_bound", rep.lower_bound},
              {"notes", rep.notes}};
}

json report_json(const HawkingReport& rep) {
  return json{{"schema", "hawking_report/v1"},
              {"area", rep.area},
              {"willmore_energy", rep.willmore_energy},
              {"hawking_mass", rep.hawking_mass},
              {"theta", rep.theta},
              {"lower_bound", rep.lower_bound},
              {"chain_ok", rep.chain_ok}};
}

json report_json(const CollarVerification& ver, const CollarExtension& collar) {
  json clauses = json::array();
  for (const ClauseReport& c : ver.clauses)
    clauses.push_back(json{{"name", c.name},
                           {"pass", c.pass},
                           {"observed", c.observed},
                           {"tolerance", c.tolerance}});
  return json{{"schema", "collar_report/v1"},
              {"n", collar.n.value()},
              {"mode", to_string(collar.mode)},
              {"theta", collar.theta},
              {"m", collar.m},
              {"r_o", collar.r_o},
              {"s_o", collar.s_o()},
              {"clauses", std::move(clauses)},
              {"all_pass", ver.all_pass},
              {"min_scalar_curvature", ver.min_scalar_curvature},
              {"grid", json::array({ver.grid_s, ver.grid_x})},
              {"fd_checked", ver.fd_checked},
              {"fd_max_abs_diff", ver.fd_max_abs_diff},
              {"fd_coarse_abs_diff", ver.fd_coarse_abs_diff}};
}

json report_json(const CornerManifold& corner) {
  return json{{"schema", "glue_report/v1"},
              {"n", corner.collar.n.value()},
              {"lapse", corner.lapse},
              {"H_minus", corner.H_minus},
              {"H_minus_data", corner.H_minus_data},
              {"H_plus", corner.H_plus},
              {"slope_jump", corner.slope_jump},
              {"metric_residual", corner.metric_residual},
              {"mass_jump", corner.mass_jump},
              {"corner_ok", corner.corner_ok},
              {"data_corner_ok", corner.data_corner_ok},
              {"t_min", corner.t_min()},
              {"t_max", corner.t_max()},
              {"collar",
               json{{"theta", corner.collar.theta},
                    {"m", corner.collar.m},
                    {"r_o", corner.collar.r_o},
                    {"s_o", corner.collar.s_o()}}},
              {"exterior",
               json{{"kind", to_string(corner.exterior.kind)},
                    {"r_o", corner.exterior.r_o},
                    {"s_max", corner.exterior.s_max()},
                    {"adm_mass", corner.exterior.adm_mass}}}};
}

json report_json(const MollifyReport& rep) {
  return json{{"schema", "mollify_report/v1"},
              {"delta", rep.delta},
              {"slope_jump", rep.slope_jump},
              {"c0_distance", rep.c0_distance},
              {"end_mass", rep.end_mass},
              {"mass_monotone", rep.mass_monotone},
              {"min_zone_curvature", rep.min_zone_curvature},
              {"sample_count", rep.t.size()}};
}

json report_json(const AdmResult& rep) {
  json raw = json::array();
  for (const MassSample& s : rep.raw)
    raw.push_back(json{{"radius", s.radius}, {"mass", s.mass}});
  return json{{"schema", "adm_report/v1"},
              {"mass", rep.mass},
              {"decay_exponent", rep.decay_exponent},
              {"spread", rep.spread},
              {"converged", rep.converged},
              {"raw", std::move(raw)},
              {"pairwise", rep.pairwise}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw input_error("csv header and column counts differ");
  for (const auto& col : columns)
    if (col.size() != columns.front().size()) throw input_error("csv columns differ in length");
  for (std::size_t c = 0; c < header.size(); ++c)
    out << header[c] << (c + 1 < header.size() ? ',' : '\n');
  char buf[32];
  for (std::size_t r = 0; r < columns.front().size(); ++r)
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
      out << buf << (c + 1 < columns.size() ? ',' : '\n');
    }
}

void write_collar_csv(std::ostream& out, const CollarExtension& collar, std::size_t grid_s) {
  if (collar.degenerate) throw input_error("degenerate collar has no samples to write");
  if (grid_s < 2) throw input_error("collar csv needs at least two s samples");
  const std::size_t nx = collar.data.sample_count();
  std::vector<std::vector<double>> cols(7);
  for (std::size_t i = 0; i <= grid_s; ++i) {
    const double s = collar.s_o() * static_cast<double>(i) / static_cast<double>(grid_s);
    const BoundaryField h = mean_curvature_slice(collar, s);
    double r_min = std::numeric_limits<double>::infinity(), r_max = -r_min;
    for (std::size_t k = 0; k < nx; ++k) {
      const double r = scalar_curvature_closed_form(collar, s, k);
      r_min = std::min(r_min, r);
      r_max = std::max(r_max, r);
    }
    const auto [h_min, h_max] = std::minmax_element(h.values.begin(), h.values.end());
    cols[0].push_back(s);
    cols[1].push_back(collar.v_at(s));
    cols[2].push_back(collar.v_slope_at(s));
    cols[3].push_back(*h_min);
    cols[4].push_back(*h_max);
    cols[5].push_back(r_min);
    cols[6].push_back(r_max);
  }
  write_csv(out, {"s", "v", "v_slope", "H_min", "H_max", "R_min", "R_max"}, cols);
}

void write_glued_csv(std::ostream& out, const CornerManifold& corner) {
  std::vector<double> ts;
  ts.reserve(corner.collar.profile.s.size() + corner.exterior.s.size());
  for (const double sp : corner.collar.profile.s)
    ts.push_back(corner.lapse * (sp - corner.collar.s_o()));
  for (std::size_t i = 1; i < corner.exterior.s.size(); ++i) ts.push_back(corner.exterior.s[i]);
  std::vector<std::vector<double>> cols(4);
  for (const double t : ts) {
    cols[0].push_back(t);
    cols[1].push_back(corner.warp_at(t));
    cols[2].push_back(corner.warp_slope_at(t));  // collar-side limit at t = 0
    cols[3].push_back(corner.quasilocal_at(t));
  }
  write_csv(out, {"t", "w", "w_slope", "quasilocal_mass"}, cols);
}

void write_mollified_csv(std::ostream& out, const CornerManifold& corner,
                         const MollifyReport& rep) {
  std::vector<std::vector<double>> cols(4);
  cols[0] = rep.t;
  cols[1] = rep.w;
  cols[2] = rep.wp;
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    cols[3].push_back(quasilocal_mass(rep.w[i], rep.wp[i], corner.collar.n));
  write_csv(out, {"t", "w", "w_slope", "quasilocal_mass"}, cols);
}

}  // namespace collarforge
