#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "collarforge/asymptotic.hpp"
#include "collarforge/boundary.hpp"
#include "collarforge/bounds.hpp"
#include "collarforge/collar.hpp"
#include "collarforge/exterior.hpp"
#include "collarforge/gluing.hpp"

namespace collarforge {

// JSON loaders. Schemas carry a "schema" version key which is validated when
// present; structural problems throw input_error. File variants read the file
// and surface parse failures as input_error too.

// boundary_data/v1. A top-level "components" array yields one entry per
// component; a plain object yields a single entry.
std::vector<BoundaryData> load_boundary_components(const nlohmann::json& j);
std::vector<BoundaryData> load_boundary_file(const std::string& path);

// exterior/v1: exact Schwarzschild ("kind": "schwarzschild", fields n, r_o, m)
// or generated ("kind": "generated", piecewise linear "mass_table" {s, m},
// optional "s_max"); the table must have ascending s and nondecreasing m and
// is held constant beyond its last knot.
RotSymExterior load_exterior(const nlohmann::json& j);
RotSymExterior load_exterior_file(const std::string& path);

// metric_spec/v1: "family" is "flat" or "isotropic_schwarzschild" (with
// "mass"); both need "n".
AsymptoticMetricSpec load_metric_spec(const nlohmann::json& j);
AsymptoticMetricSpec load_metric_spec_file(const std::string& path);

// Report serializers, one JSON object each, with a "schema" version key.
nlohmann::json report_json(const BoundReport& rep);
nlohmann::json report_json(const MultiBoundReport& rep);
nlohmann::json report_json(const HawkingReport& rep);
nlohmann::json report_json(const CollarVerification& ver, const CollarExtension& collar);
nlohmann::json report_json(const CornerManifold& corner);
nlohmann::json report_json(const MollifyReport& rep);
nlohmann::json report_json(const AdmResult& rep);

// FNV-1a 64-bit of the raw bytes, as 16 hex digits; reports stamp it so a
// result can be tied back to its exact input file.
std::string fnv1a_hex(const std::string& bytes);

// Plain CSV with one header row; columns must have equal length.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// Column sets for the CSV outputs of the CLI.
void write_collar_csv(std::ostream& out, const CollarExtension& collar, std::size_t grid_s);
void write_glued_csv(std::ostream& out, const CornerManifold& corner);
void write_mollified_csv(std::ostream& out, const CornerManifold& corner,
                         const MollifyReport& rep);

}  // namespace collarforge
