#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "collarforge/bounds.hpp"
#include "collarforge/collar.hpp"
#include "collarforge/errors.hpp"
#include "collarforge/gluing.hpp"
#include "collarforge/io_json.hpp"

namespace cf = collarforge;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cf::input_error("cannot open file: " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

cf::CollarMode parse_mode(const std::string& mode) {
  if (mode == "cmc") return cf::CollarMode::cmc;
  if (mode == "laplacian") return cf::CollarMode::laplacian;
  throw cf::input_error("mode must be cmc or laplacian");
}

void parse_grid(const std::string& grid, std::size_t& ns, std::size_t& nx) {
  const auto pos = grid.find('x');
  try {
    if (pos == std::string::npos) throw std::invalid_argument(grid);
    ns = std::stoul(grid.substr(0, pos));
    nx = std::stoul(grid.substr(pos + 1));
  } catch (const std::exception&) {
    throw cf::input_error("grid must look like 256x128");
  }
  if (ns < 2 || nx < 1) throw cf::input_error("grid must be at least 2x1");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_out_file(const std::string& path, const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cf::input_error("cannot write file: " + path);
  writer(out);
}

cf::BoundaryData single_component(const std::string& path) {
  auto components = cf::load_boundary_file(path);
  if (components.size() != 1)
    throw cf::input_error("this command takes a single boundary component");
  return std::move(components.front());
}

// ---- selftest helpers -------------------------------------------------------

cf::BoundaryData random_admissible_axisym(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int tries = 0; tries < 64; ++tries) {
    const double r = 1.0 + 2.0 * uni(rng);
    const double e1 = 0.2 * (2.0 * uni(rng) - 1.0);
    const double e2 = 0.2 * (2.0 * uni(rng) - 1.0);
    const double level =
        (0.3 + 0.5 * uni(rng)) * 2.0 / r / (1.0 + std::abs(e1) + std::abs(e2));
    const auto h_fn = [=](double th) {
      const double c = std::cos(th);
      return level * (1.0 + e1 * c + e2 * c * c);
    };
    cf::BoundaryData data = cf::BoundaryData::axisym_round(r, h_fn, 513);
    if (cf::check_cmc_condition(data).admissible() &&
        cf::check_laplacian_condition(data).admissible())
      return data;
  }
  throw cf::convergence_error("selftest could not draw admissible boundary data");
}

cf::RotSymExterior random_exterior(std::mt19937_64& rng, bool& constant_mass) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const cf::Dim n(3 + static_cast<int>(uni(rng) * 4.999));
  const double dn = n.value();
  const double r_o = 1.0 + 2.0 * uni(rng);
  const double theta0 = 0.05 + 0.85 * uni(rng);
  const double m0 = 0.5 * std::pow(r_o, dn - 2.0) * (1.0 - theta0);

  constant_mass = uni(rng) < 0.3;
  // Total added mass keeps 2 m / f^{n-2} <= 1 - 0.75 theta0 however early the
  // knots sit, so the integration never reaches a horizon.
  const double dm_total = constant_mass ? 0.0 : uni(rng) * 0.125 * theta0 * std::pow(r_o, dn - 2.0);
  std::vector<double> ks = {0.2 * r_o + 3.8 * r_o * uni(rng), 0.2 * r_o + 3.8 * r_o * uni(rng),
                            0.2 * r_o + 3.8 * r_o * uni(rng)};
  std::sort(ks.begin(), ks.end());
  std::vector<double> ws = {uni(rng), uni(rng), uni(rng)};
  const double wsum = ws[0] + ws[1] + ws[2] + 1e-12;

  const std::vector<double> s = {0.0, ks[0], ks[1], ks[2]};
  std::vector<double> m = {m0, m0, m0, m0};
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    acc += dm_total * ws[static_cast<std::size_t>(i)] / wsum;
    m[static_cast<std::size_t>(i) + 1] = m0 + acc;
  }
  const auto mass_fn = [s, m](double sv) {
    if (sv <= s.front()) return m.front();
    if (sv >= s.back()) return m.back();
    const auto it = std::upper_bound(s.begin(), s.end(), sv);
    const std::size_t i = static_cast<std::size_t>(it - s.begin()) - 1;
    const double w = (sv - s[i]) / (s[i + 1] - s[i]);
    return (1.0 - w) * m[i] + w * m[i + 1];
  };
  return cf::make_generated_exterior(mass_fn, r_o, n, s.back());
}

json run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr int exterior_cases = 25;
  constexpr int axisym_cases = 3;

  // Schwarzschild end to end: the bound must be attained.
  const auto equality =
      cf::end_to_end_check(cf::make_schwarzschild_exterior(0.5, 2.0, cf::Dim(3)),
                           cf::CollarMode::cmc);
  if (std::abs(equality.slack) > 1e-8)
    throw cf::violation_error("selftest: Schwarzschild equality case has nonzero slack");

  for (int i = 0; i < exterior_cases; ++i) {
    bool constant_mass = false;
    const cf::RotSymExterior ext = random_exterior(rng, constant_mass);
    const auto rep_cmc = cf::end_to_end_check(ext, cf::CollarMode::cmc);
    cf::end_to_end_check(ext, cf::CollarMode::laplacian);
    if (constant_mass && std::abs(rep_cmc.slack) > 1e-6)
      throw cf::violation_error("selftest: constant-mass exterior should attain the bound");
  }

  for (int i = 0; i < axisym_cases; ++i) {
    const cf::BoundaryData data = random_admissible_axisym(rng);
    const cf::CollarExtension collar = cf::build_collar(data, cf::CollarMode::laplacian);
    const cf::CollarVerification ver = cf::verify_proposition(collar, 96, 64);
    if (!ver.all_pass) throw cf::violation_error("selftest: collar verification failed");
    cf::hawking_check(data);  // throws when the chain breaks
  }

  return json{{"schema", "selftest_report/v1"},
              {"seed", seed},
              {"schwarzschild_equality_slack", equality.slack},
              {"exterior_cases", exterior_cases},
              {"axisym_cases", axisym_cases},
              {"all_ok", true}};
}

int run(int argc, char** argv) {
  CLI::App app{"collar extensions and quasilocal mass lower bounds"};
  app.require_subcommand(1);

  std::string boundary_path, exterior_path, metric_path, out_path;
  std::string mode = "cmc", grid = "256x128";
  bool verify = false;
  double delta = 0.0;
  std::vector<double> radii;
  std::uint64_t seed = 12345;

  auto* cmd_bound = app.add_subcommand("bound", "mass lower bound from boundary data");
  cmd_bound->add_option("boundary", boundary_path, "boundary data JSON")->required();
  cmd_bound->add_option("--mode", mode, "cmc, laplacian or both")->capture_default_str();

  auto* cmd_collar = app.add_subcommand("collar", "build the collar extension");
  cmd_collar->add_option("boundary", boundary_path, "boundary data JSON")->required();
  cmd_collar->add_flag("--verify", verify, "check the collar guarantees on a grid");
  cmd_collar->add_option("--mode", mode, "cmc or laplacian")->capture_default_str();
  cmd_collar->add_option("--grid", grid, "verification grid, s-steps x samples")
      ->capture_default_str();
  cmd_collar->add_option("--out", out_path, "write collar samples as CSV");

  auto* cmd_glue = app.add_subcommand("glue", "join a collar to an exterior across a corner");
  cmd_glue->add_option("boundary", boundary_path, "boundary data JSON")->required();
  cmd_glue->add_option("exterior", exterior_path, "exterior spec JSON")->required();
  cmd_glue->add_option("--mode", mode, "cmc or laplacian")->capture_default_str();
  cmd_glue->add_option("--out", out_path, "write the glued profile as CSV");

  auto* cmd_mollify = app.add_subcommand("mollify", "smooth the glued corner");
  cmd_mollify->add_option("exterior", exterior_path, "exterior spec JSON")->required();
  cmd_mollify->add_option("--boundary", boundary_path, "boundary data JSON for the collar side")
      ->required();
  cmd_mollify->add_option("--delta", delta, "smoothing half-width")->required();
  cmd_mollify->add_option("--mode", mode, "cmc or laplacian")->capture_default_str();
  cmd_mollify->add_option("--out", out_path, "write the smoothed profile as CSV");

  auto* cmd_hawking = app.add_subcommand("hawking", "Hawking mass comparison chain, n = 3");
  cmd_hawking->add_option("boundary", boundary_path, "boundary data JSON")->required();

  auto* cmd_adm = app.add_subcommand("adm", "ADM mass of an asymptotically flat metric");
  cmd_adm->add_option("metric", metric_path, "metric spec JSON")->required();
  cmd_adm->add_option("--radii", radii, "integration sphere radii")
      ->required()
      ->delimiter(',');

  auto* cmd_selftest = app.add_subcommand("selftest", "seeded end-to-end property sweep");
  cmd_selftest->add_option("--seed", seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  if (cmd_bound->parsed()) {
    const std::string digest = cf::fnv1a_hex(slurp(boundary_path));
    const auto components = cf::load_boundary_file(boundary_path);
    const auto one_mode = [&](cf::CollarMode m) {
      json j = components.size() == 1
                   ? cf::report_json(cf::mass_lower_bound(components.front(), m))
                   : cf::report_json(cf::mass_lower_bound_multi(components, m));
      j["input_digest"] = digest;
      return j;
    };
    if (mode == "both")
      emit(json{{"schema", "bound_report_pair/v1"},
                {"cmc", one_mode(cf::CollarMode::cmc)},
                {"laplacian", one_mode(cf::CollarMode::laplacian)}});
    else
      emit(one_mode(parse_mode(mode)));
    return 0;
  }

  if (cmd_collar->parsed()) {
    const std::string digest = cf::fnv1a_hex(slurp(boundary_path));
    const cf::BoundaryData data = single_component(boundary_path);
    const cf::CollarExtension collar = cf::build_collar(data, parse_mode(mode));
    std::size_t ns = 256, nx = 128;
    parse_grid(grid, ns, nx);
    if (!out_path.empty())
      write_out_file(out_path,
                     [&](std::ostream& o) { cf::write_collar_csv(o, collar, ns); });
    if (verify) {
      const cf::CollarVerification ver = cf::verify_proposition(collar, ns, nx);
      json j = cf::report_json(ver, collar);
      j["input_digest"] = digest;
      emit(j);
      return ver.all_pass ? 0 : 4;
    }
    emit(json{{"schema", "collar_summary/v1"},
              {"n", collar.n.value()},
              {"mode", to_string(collar.mode)},
              {"theta", collar.theta},
              {"m", collar.m},
              {"r_o", collar.r_o},
              {"s_o", collar.s_o()},
              {"degenerate", collar.degenerate},
              {"input_digest", digest}});
    return 0;
  }

  if (cmd_glue->parsed() || cmd_mollify->parsed()) {
    const std::string b_digest = cf::fnv1a_hex(slurp(boundary_path));
    const std::string e_digest = cf::fnv1a_hex(slurp(exterior_path));
    const cf::BoundaryData data = single_component(boundary_path);
    const cf::CollarExtension collar = cf::build_collar(data, parse_mode(mode));
    const cf::RotSymExterior ext = cf::load_exterior_file(exterior_path);
    const cf::CornerManifold corner = cf::glue(collar, ext);
    if (cmd_glue->parsed()) {
      if (!out_path.empty())
        write_out_file(out_path, [&](std::ostream& o) { cf::write_glued_csv(o, corner); });
      json j = cf::report_json(corner);
      j["input_digest"] = b_digest;
      j["exterior_digest"] = e_digest;
      emit(j);
      return 0;
    }
    const cf::MollifyReport rep = cf::mollify_corner(corner, delta);
    if (!out_path.empty())
      write_out_file(out_path,
                     [&](std::ostream& o) { cf::write_mollified_csv(o, corner, rep); });
    json j = cf::report_json(rep);
    j["corner"] = cf::report_json(corner);
    j["input_digest"] = b_digest;
    j["exterior_digest"] = e_digest;
    emit(j);
    return 0;
  }

  if (cmd_hawking->parsed()) {
    const std::string digest = cf::fnv1a_hex(slurp(boundary_path));
    json j = cf::report_json(cf::hawking_check(single_component(boundary_path)));
    j["input_digest"] = digest;
    emit(j);
    return 0;
  }

  if (cmd_adm->parsed()) {
    const std::string digest = cf::fnv1a_hex(slurp(metric_path));
    const cf::AsymptoticMetricSpec spec = cf::load_metric_spec_file(metric_path);
    json j = cf::report_json(cf::adm_mass(spec, radii));
    j["input_digest"] = digest;
    emit(j);
    return 0;
  }

  emit(run_selftest(seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cf::input_error& e) {
    std::cout << json{{"error", e.what()}, {"class", "input"}}.dump(2) << "\n";
    return 3;
  } catch (const cf::inadmissible_error& e) {
    std::cout << json{{"error", e.what()}, {"class", "inadmissible"}}.dump(2) << "\n";
    return 1;
  } catch (const cf::convergence_error& e) {
    std::cout << json{{"error", e.what()}, {"class", "convergence"}}.dump(2) << "\n";
    return 2;
  } catch (const cf::violation_error& e) {
    std::cout << json{{"error", e.what()}, {"class", "violation"}}.dump(2) << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}, {"class", "internal"}}.dump(2) << "\n";
    return 4;
  }
}
