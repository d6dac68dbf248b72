#pragma once

// Flat run configuration: INI-like `key = value` text, `--set key=value`
// overrides and a JSON echo that parses back to the same RunConfig.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quadspin/dynamics.hpp"
#include "quadspin/errors.hpp"

namespace quadspin {

/// Validation or parse failure; carries the offending field and, for file
/// input, the 1-based line number (0 when not applicable).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct RunConfig {
  int spin_two_i = 2;
  double eta = 0.0;
  double f_q_hz = 1.0;
  double larmor_hz = 0.0;       // omega_0 / 2 pi
  double field_theta = kPi / 2; // field along +x by default
  double field_phi = 0.0;
  double dephasing_hz = 0.0;    // W_phi / 2 pi
  double css_theta = kPi / 2;
  double css_phi = kPi / 2;
  /// Horizon in units of 1/f_Q; empty means 10, or 50/W_phi (in tau) with dephasing.
  std::optional<double> t_max_in_inverse_fq;
  int samples_per_inverse_fq = 100;
  Integrator integrator = Integrator::eigenpropagator;
  std::filesystem::path output_dir = "out";
  /// Keep every n-th sample in the written series.
  int output_stride = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  /// Applies one `key = value` assignment; `line` is reported on error.
  void set(std::string_view key, std::string_view value, int line = 0);

  double resolved_t_max_tau() const;
  /// Dephasing rate W_phi in rad/s.
  double dephasing_rate() const;

  Operator hamiltonian() const;
  EvolutionSpec evolution_spec() const;

  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses INI-like text: `key = value`, `#` or `;` comments, optional
/// `[section]` headers (ignored). Values accept pi expressions (`pi/2`, `3*pi/4`).
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Applies `key=value` overrides in order.
void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments);

/// Real number or product/quotient of numbers and `pi`, with an optional sign.
double parse_real(std::string_view text);

std::string to_string(Integrator integrator);
Integrator parse_integrator(std::string_view text);

}  // namespace quadspin
