#pragma once

// One-axis parameter sweeps over a base RunConfig. Points run concurrently;
// files and the aggregate table follow the input value order.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "quadspin/config.hpp"
#include "quadspin/parallel.hpp"

namespace quadspin {

enum class SweepAxis { eta, theta_css, phi_css, larmor, spin };

SweepAxis parse_sweep_axis(std::string_view name);
std::string to_string(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::eta;
  std::vector<double> values;  // spin axis: I (multiples of 1/2)
  RunConfig base;

  /// Non-empty, unique values and a valid base; a point that fails its own
  /// validation is reported as a failed point, not a sweep error.
  void validate() const;
  RunConfig point(std::size_t index) const;
};

/// "v1,v2,..." or "a:b:n" (n evenly spaced values, both ends included).
std::vector<double> parse_sweep_values(std::string_view text);

struct SweepFailure {
  std::size_t index;
  double value;
  std::string error;
};

struct SweepResult {
  std::filesystem::path aggregate;
  std::filesystem::path manifest;
  std::vector<SweepFailure> failures;
};

/// Writes `<axis>_<k>.csv/.json` per point, `sweep_<axis>.csv` and
/// `sweep_manifest.json` under base.output_dir.
SweepResult run_sweep(const SweepSpec& spec, Parallelism parallelism = {});

}  // namespace quadspin
