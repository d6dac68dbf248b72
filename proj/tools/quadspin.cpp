// quadspin command-line driver.
//
// Exit codes: 0 ok, 1 other failure, 2 configuration error,
// 3 integrator failure, 4 partial sweep failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadspin/config.hpp"
#include "quadspin/format.hpp"
#include "quadspin/metrics.hpp"
#include "quadspin/run.hpp"
#include "quadspin/scenarios.hpp"
#include "quadspin/sweep.hpp"
#include "quadspin/wigner.hpp"

using namespace quadspin;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  int workers = 0;
};

RunConfig build_config(const Common& c) {
  RunConfig cfg;
  if (!c.config_path.empty()) cfg = load_config(c.config_path);
  apply_overrides(cfg, c.overrides);
  if (!c.output_dir.empty()) cfg.output_dir = c.output_dir;
  cfg.validate();
  return cfg;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ConfigError("grid", 0, "expected <n_theta>x<n_phi>");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ConfigError("grid", 0, "expected <n_theta>x<n_phi>");
  }
}

int cmd_run(const Common& c, const std::string& stem) {
  const RunConfig cfg = build_config(c);
  const auto summary = run_single(cfg, stem, Parallelism{c.workers});
  std::cout << summary.csv.string() << '\n';
  return 0;
}

int cmd_scenario(const Common& c, const std::string& name) {
  const std::string dir = c.output_dir.empty() ? "out/" + name : c.output_dir;
  const std::vector<std::string> names =
      name == "all" ? scenario_names() : std::vector<std::string>{name};
  const auto& known = scenario_names();
  if (name != "all" && std::find(known.begin(), known.end(), name) == known.end())
    throw ConfigError("scenario", 0, "unknown scenario '" + name + "'");
  for (const auto& n : names) {
    const auto result = run_scenario(n, names.size() > 1 ? std::filesystem::path(dir) / n : std::filesystem::path(dir),
                                     Parallelism{c.workers});
    for (const auto& a : result.assertions)
      std::cout << (a.passed ? "[PASS] " : "[FAIL] ") << n << ": " << a.name << " (value "
                << format_double(a.value) << ")\n";
    std::cout << result.manifest.string() << '\n';
  }
  return 0;
}

int cmd_sweep(const Common& c, const std::string& axis, const std::string& values) {
  SweepSpec spec;
  spec.base = build_config(c);
  spec.axis = parse_sweep_axis(axis);
  spec.values = parse_sweep_values(values);
  const auto result = run_sweep(spec, Parallelism{c.workers});
  std::cout << result.aggregate.string() << '\n';
  for (const auto& f : result.failures)
    std::cerr << "point " << f.index << " (" << format_double(f.value) << ") failed: " << f.error << '\n';
  return result.failures.empty() ? 0 : 4;
}

int cmd_wigner(const Common& c, double tau, const std::string& grid_text) {
  RunConfig cfg = build_config(c);
  const auto [nt, np] = parse_grid(grid_text);
  if (nt < 2 || np < 4) throw ConfigError("grid", 0, "needs n_theta >= 2 and n_phi >= 4");
  const SphereGrid grid(nt, np);
  const SpinQuantumNumber spin(cfg.spin_two_i);
  std::optional<QuantumState> last = css(spin, BlochDirection(cfg.css_theta, cfg.css_phi));
  if (tau > 0.0) {
    // One step straight to the requested instant.
    cfg.t_max_in_inverse_fq = tau;
    EvolutionSpec spec = cfg.evolution_spec();
    spec.dt_sample = spec.t_max;
    const QuantumState initial = *last;
    evolve(initial, spec, [&](std::size_t, double, const QuantumState& s) { last = s; });
  }
  const auto field = wigner_distribution(*last, grid, Parallelism{c.workers});
  std::filesystem::create_directories(cfg.output_dir);
  const auto stem = cfg.output_dir / ("wigner_tau" + format_double(tau));
  std::ofstream csv(stem.string() + ".csv", std::ios::binary);
  write_wigner_csv(csv, field);
  std::ofstream meta(stem.string() + ".json", std::ios::binary);
  write_wigner_metadata(meta, field, tau);
  std::cout << stem.string() << ".csv\n";
  return 0;
}

int cmd_rate_map(const Common& c, int two_i, double eta, const std::string& grid_text) {
  const auto [nt, np] = parse_grid(grid_text);
  if (nt < 2 || np < 1) throw ConfigError("grid", 0, "needs n_theta >= 2 and n_phi >= 1");
  if (two_i < 2) throw ConfigError("spin", 0, "2I must be >= 2");
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta", 0, "must lie in [0, 1]");
  const auto q = rate_map(SpinQuantumNumber(two_i), eta, nt, np, Parallelism{c.workers});
  const std::filesystem::path dir = c.output_dir.empty() ? "out" : c.output_dir;
  std::filesystem::create_directories(dir);
  const auto path = dir / ("rate_map_2I" + std::to_string(two_i) + "_eta" + format_double(eta) + ".csv");
  std::ofstream out(path, std::ios::binary);
  out << "theta,phi,q\n";
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < np; ++j)
      out << format_double(lattice_theta(i, nt)) << ',' << format_double(lattice_phi(j, np)) << ','
          << format_double(q[static_cast<std::size_t>(i) * np + j]) << '\n';
  std::cout << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrupolar spin squeezing simulator"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool with_config) {
    if (with_config) {
      sub->add_option("--config", common.config_path, "INI-like key = value file");
      sub->add_option("--set", common.overrides, "key=value override (repeatable)");
    }
    sub->add_option("--output-dir", common.output_dir, "output directory");
    sub->add_option("--workers", common.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  };

  std::string stem = "run";
  auto* run = app.add_subcommand("run", "evolve one configuration and write its squeezing series");
  add_common(run, true);
  run->add_option("--stem", stem, "output file stem");

  std::string scenario;
  auto* scen = app.add_subcommand("scenario", "reproduce a figure (fig2 ... fig9, or all)");
  add_common(scen, false);
  scen->add_option("name", scenario)->required();

  std::string axis, values;
  auto* sweep = app.add_subcommand("sweep", "one-axis parameter sweep");
  add_common(sweep, true);
  sweep->add_option("--axis", axis, "eta | theta_css | phi_css | larmor | spin")->required();
  sweep->add_option("--values", values, "v1,v2,... or a:b:n")->required();

  double tau = 0.0;
  std::string grid = "91x180";
  auto* wig = app.add_subcommand("wigner", "Wigner distribution of the evolved state at tau = f_Q t");
  add_common(wig, true);
  wig->add_option("--at", tau, "instant in units of 1/f_Q")->required()->check(CLI::NonNegativeNumber);
  wig->add_option("--grid", grid, "<n_theta>x<n_phi>");

  int spin_two_i = 0;
  double eta = 0.0;
  std::string rgrid = "91x180";
  auto* rmap = app.add_subcommand("rate-map", "squeezing-rate map over the Bloch sphere");
  add_common(rmap, false);
  rmap->add_option("--spin", spin_two_i, "2I")->required();
  rmap->add_option("--eta", eta, "EFG biaxiality")->required();
  rmap->add_option("--grid", rgrid, "<n_theta>x<n_phi>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(common, stem);
    if (*scen) return cmd_scenario(common, scenario);
    if (*sweep) return cmd_sweep(common, axis, values);
    if (*wig) return cmd_wigner(common, tau, grid);
    if (*rmap) return cmd_rate_map(common, spin_two_i, eta, rgrid);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const IntegratorDiverged& e) {
    std::cerr << "integrator failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
