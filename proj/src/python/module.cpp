#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "collarforge/bounds.hpp"
#include "collarforge/collar.hpp"
#include "collarforge/errors.hpp"
#include "collarforge/gluing.hpp"
#include "collarforge/io_json.hpp"
#include "collarforge/profile.hpp"

namespace py = pybind11;
namespace cf = collarforge;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw cf::input_error(std::string("invalid JSON: ") + e.what());
  }
}

cf::CollarMode parse_mode(const std::string& mode) {
  if (mode == "cmc") return cf::CollarMode::cmc;
  if (mode == "laplacian") return cf::CollarMode::laplacian;
  throw cf::input_error("mode must be cmc or laplacian");
}

std::string bound_json(const std::string& boundary, const std::string& mode) {
  const auto comps = cf::load_boundary_components(parse(boundary));
  const cf::CollarMode m = parse_mode(mode);
  const json j = comps.size() == 1
                     ? cf::report_json(cf::mass_lower_bound(comps.front(), m))
                     : cf::report_json(cf::mass_lower_bound_multi(comps, m));
  return j.dump();
}

cf::BoundaryData single(const std::string& boundary) {
  auto comps = cf::load_boundary_components(parse(boundary));
  if (comps.size() != 1) throw cf::input_error("this operation takes a single boundary component");
  return std::move(comps.front());
}

std::string verify_collar_json(const std::string& boundary, const std::string& mode,
                               std::size_t grid_s, std::size_t grid_x) {
  const cf::CollarExtension collar = cf::build_collar(single(boundary), parse_mode(mode));
  return cf::report_json(cf::verify_proposition(collar, grid_s, grid_x), collar).dump();
}

std::string hawking_json(const std::string& boundary) {
  return cf::report_json(cf::hawking_check(single(boundary))).dump();
}

cf::CornerManifold glue_pieces(const std::string& boundary, const std::string& exterior,
                               const std::string& mode) {
  const cf::CollarExtension collar = cf::build_collar(single(boundary), parse_mode(mode));
  return cf::glue(collar, cf::load_exterior(parse(exterior)));
}

std::string glue_json(const std::string& boundary, const std::string& exterior,
                      const std::string& mode) {
  return cf::report_json(glue_pieces(boundary, exterior, mode)).dump();
}

std::string mollify_json(const std::string& boundary, const std::string& exterior,
                         const std::string& mode, double delta) {
  const cf::CornerManifold corner = glue_pieces(boundary, exterior, mode);
  json j = cf::report_json(cf::mollify_corner(corner, delta));
  j["corner"] = cf::report_json(corner);
  return j.dump();
}

std::string adm_json(const std::string& metric, const std::vector<double>& radii) {
  return cf::report_json(cf::adm_mass(cf::load_metric_spec(parse(metric)), radii)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "collar extensions and quasilocal mass lower bounds";

  py::register_exception<cf::input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<cf::inadmissible_error>(m, "InadmissibleError", PyExc_ValueError);
  py::register_exception<cf::convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<cf::violation_error>(m, "ViolationError", PyExc_RuntimeError);

  m.def(
      "unit_sphere_area", [](int n) { return cf::unit_sphere_area(cf::Dim(n)); }, py::arg("n"),
      "area of the unit (n-1)-sphere");
  m.def(
      "area_radius", [](double area, int n) { return cf::area_radius(area, cf::Dim(n)); },
      py::arg("area"), py::arg("n"), "radius of the round sphere with the given area");
  m.def(
      "quasilocal_mass",
      [](double f, double fp, int n) { return cf::quasilocal_mass(f, fp, cf::Dim(n)); },
      py::arg("f"), py::arg("fprime"), py::arg("n"),
      "f^{n-2} (1 - f'^2) / 2 for a rotationally symmetric level sphere");
  m.def(
      "horizon_radius", [](double mass, int n) { return cf::horizon_radius(mass, cf::Dim(n)); },
      py::arg("mass"), py::arg("n"), "radius (2m)^{1/(n-2)} of the horizon sphere");
  m.def(
      "proper_length",
      [](double mass, double r_o, int n) { return cf::proper_length(mass, r_o, cf::Dim(n)); },
      py::arg("mass"), py::arg("r_o"), py::arg("n"),
      "arclength of the rotationally symmetric profile from its horizon to radius r_o");
  m.def(
      "penrose_bound_minimal",
      [](double area, int n) { return cf::penrose_bound_minimal(area, cf::Dim(n)); },
      py::arg("area"), py::arg("n"), "mass bound for a minimal boundary of the given area");

  m.def("bound_json", &bound_json, py::arg("boundary"), py::arg("mode") = "cmc",
        "mass lower bound report for boundary data JSON (single or multi component)");
  m.def("verify_collar_json", &verify_collar_json, py::arg("boundary"), py::arg("mode") = "cmc",
        py::arg("grid_s") = 256, py::arg("grid_x") = 128,
        "build the collar and check its guarantees on a grid");
  m.def("hawking_json", &hawking_json, py::arg("boundary"),
        "Hawking mass comparison chain for n = 3 boundary data");
  m.def("glue_json", &glue_json, py::arg("boundary"), py::arg("exterior"),
        py::arg("mode") = "cmc", "join the collar to an exterior across a corner");
  m.def("mollify_json", &mollify_json, py::arg("boundary"), py::arg("exterior"),
        py::arg("mode"), py::arg("delta"), "smooth the glued corner");
  m.def("adm_json", &adm_json, py::arg("metric"), py::arg("radii"),
        "ADM mass of an asymptotically flat metric spec");
}
