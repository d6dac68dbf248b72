#pragma once

// Single-run driver: evolves one RunConfig and streams the squeezing series
// to `<output_dir>/<stem>.csv` with a JSON sidecar `<stem>.json`.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "quadspin/config.hpp"
#include "quadspin/metrics.hpp"
#include "quadspin/parallel.hpp"

namespace quadspin {

inline constexpr const char* kSeriesHeader =
    "t_over_fq,xi_s,xi_r,sx,sy,sz,var_min,var_max,opt_angle,purity,flag";

/// flag column: 0 regular sample, 1 mean spin undefined (xi columns are nan).
void write_series_row(std::ostream& out, double tau, const SqueezingRecord& rec);

struct RunSummary {
  std::filesystem::path csv;
  std::filesystem::path sidecar;
  std::vector<double> tau;
  std::vector<SqueezingRecord> records;
  BandStatistics bands;
  DutyCycle duty;
};

/// Validates, evolves and writes. Throws ConfigError or IntegratorDiverged.
RunSummary run_single(const RunConfig& config, const std::string& stem = "run", Parallelism parallelism = {});

/// Same evolution without touching the filesystem.
RunSummary simulate(const RunConfig& config, Parallelism parallelism = {});

/// Library version string embedded in every sidecar.
const char* library_version();

}  // namespace quadspin
