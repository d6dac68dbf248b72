#include "quadspin/run.hpp"

#include <fstream>
#include <ostream>

#include "quadspin/format.hpp"
#include "quadspin/states.hpp"

#ifndef QUADSPIN_VERSION
#define QUADSPIN_VERSION "0.0.0"
#endif

namespace quadspin {

const char* library_version() { return QUADSPIN_VERSION; }

void write_series_row(std::ostream& out, double tau, const SqueezingRecord& rec) {
  out << format_double(tau) << ',' << format_double(rec.xi_s) << ',' << format_double(rec.xi_r) << ','
      << format_double(rec.mean_spin[0]) << ',' << format_double(rec.mean_spin[1]) << ','
      << format_double(rec.mean_spin[2]) << ',' << format_double(rec.var_min) << ','
      << format_double(rec.var_max) << ',' << format_double(rec.optimal_angle) << ','
      << format_double(rec.purity) << ',' << (rec.mean_spin_defined ? 0 : 1) << '\n';
}

namespace {

constexpr std::size_t kChunk = 1024;

/// Drives the evolution and hands every emitted sample (tau, record) to `emit` in order.
template <class Emit>
void stream_series(const RunConfig& config, Parallelism parallelism, Emit&& emit) {
  config.validate();
  const SpinQuantumNumber spin(config.spin_two_i);
  EvolutionSpec spec = config.evolution_spec();
  const auto stride = static_cast<std::size_t>(config.output_stride);
  // The exact propagator can step straight to the kept samples.
  const bool coarse = spec.integrator == Integrator::eigenpropagator;
  if (coarse) spec.dt_sample *= static_cast<double>(stride);

  const QuantumState initial = css(spin, BlochDirection(config.css_theta, config.css_phi));
  std::vector<QuantumState> pending;
  std::vector<double> pending_tau;
  pending.reserve(kChunk);
  auto flush = [&] {
    std::vector<SqueezingRecord> recs(pending.size());
    parallel_for(pending.size(), parallelism, [&](std::size_t k) {
      recs[k] = squeezing_parameter(pending[k], spin, pending_tau[k] / config.f_q_hz);
    });
    for (std::size_t k = 0; k < recs.size(); ++k) emit(pending_tau[k], recs[k]);
    pending.clear();
    pending_tau.clear();
  };

  evolve(initial, spec, [&](std::size_t index, double, const QuantumState& state) {
    std::size_t fine = index;
    if (coarse) fine = index * stride;
    else if (index % stride != 0) return;
    pending.push_back(state);
    pending_tau.push_back(static_cast<double>(fine) / config.samples_per_inverse_fq);
    if (pending.size() == kChunk) flush();
  });
  flush();
}

void finish(RunSummary& summary) {
  summary.bands = band_statistics(summary.records);
  summary.duty = duty_cycle(summary.records);
}

}  // namespace

RunSummary simulate(const RunConfig& config, Parallelism parallelism) {
  RunSummary summary;
  stream_series(config, parallelism, [&](double tau, const SqueezingRecord& rec) {
    summary.tau.push_back(tau);
    summary.records.push_back(rec);
  });
  finish(summary);
  return summary;
}

RunSummary run_single(const RunConfig& config, const std::string& stem, Parallelism parallelism) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  RunSummary summary;
  summary.csv = config.output_dir / (stem + ".csv");
  summary.sidecar = config.output_dir / (stem + ".json");

  std::ofstream csv(summary.csv, std::ios::binary);
  if (!csv) throw Error("cannot write " + summary.csv.string());
  csv << kSeriesHeader << '\n';
  stream_series(config, parallelism, [&](double tau, const SqueezingRecord& rec) {
    write_series_row(csv, tau, rec);
    summary.tau.push_back(tau);
    summary.records.push_back(rec);
  });
  csv.close();
  finish(summary);

  const EvolutionSpec spec = config.evolution_spec();
  nlohmann::ordered_json side;
  side["library"] = "quadspin";
  side["version"] = library_version();
  side["config"] = config.to_json();
  side["derived"] = {
      {"t_max_tau", config.resolved_t_max_tau()},
      {"t_max_seconds", spec.t_max},
      {"dt_sample_seconds", spec.dt_sample},
      {"dephasing_rate_rad_per_s", spec.dephasing_rate},
      {"rows", summary.records.size()},
      {"time_axis", "t_over_fq = f_Q * t"},
  };
  std::ofstream js(summary.sidecar, std::ios::binary);
  if (!js) throw Error("cannot write " + summary.sidecar.string());
  js << side.dump(2) << '\n';
  return summary;
}

}  // namespace quadspin
