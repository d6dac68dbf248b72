#pragma once

// Closed (Schroedinger) and phase-damped (Lindblad, dephasing along Iz)
// evolution of a single spin:
//
//   d rho/dt = -i [H, rho] + W (Iz rho Iz - {Iz^2, rho}/2)      (hbar = 1)
//
// Outputs are sampled on the uniform grid t_k = k * dt_sample, k = 0..N,
// N = floor(t_max / dt_sample).

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "quadspin/spin_algebra.hpp"
#include "quadspin/states.hpp"

namespace quadspin {

enum class Integrator {
  /// Exact propagator: exp(-iHt) from the eigendecomposition for closed
  /// systems, exp(L t) of the Liouvillian superoperator with dephasing.
  eigenpropagator,
  /// Fixed-step classical RK4 with step `rk4_step`.
  rk4,
  /// Adaptive Dormand-Prince 5(4) with dense output.
  rk45,
};

struct EvolutionSpec {
  Operator hamiltonian;        // rad/s
  double dephasing_rate = 0.0; // W_phi, rad/s; 0 disables the dissipator
  double t_max = 1.0;          // seconds
  double dt_sample = 0.01;     // seconds
  Integrator integrator = Integrator::eigenpropagator;
  double rk_tolerance = 1e-9;      // relative, rk45
  double rk_abs_tolerance = 1e-12; // absolute, rk45
  double rk4_step = 0.0;           // seconds; <= 0 means one step per sample

  void validate() const;
  std::size_t sample_count() const;
  double sample_time(std::size_t k) const { return static_cast<double>(k) * dt_sample; }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
};

/// Called once per output sample, in time order.
using SampleSink = std::function<void(std::size_t index, double t, const QuantumState& state)>;

/// Streams the evolution to `sink` without storing it. Pure input with
/// W = 0 under the eigenpropagator stays pure; everything else is mixed.
void evolve(const QuantumState& initial, const EvolutionSpec& spec, const SampleSink& sink);

/// Requires a pure initial state and W = 0; always uses the eigenpropagator.
Trajectory evolve_unitary(const QuantumState& initial, const EvolutionSpec& spec);

/// Density-matrix evolution with the configured integrator.
Trajectory evolve_lindblad(const QuantumState& initial, const EvolutionSpec& spec);

/// Right-hand side of the master equation.
Matrix lindblad_rhs(const Matrix& h, double dephasing_rate, const Matrix& rho);

/// Row-major vec(rho) superoperator: vec(d rho/dt) = L vec(rho).
Matrix liouvillian(const Operator& h, double dephasing_rate);

struct SteadyState {
  QuantumState state;
  std::optional<double> converged_at;  // seconds; empty when t_max was hit first
  double t_end = 0.0;
  double xi_s = 0.0;                   // NaN when the mean spin vanished
};

inline constexpr double kSteadyStateThreshold = 1e-8;

/// Integrates until ||rho(s) - rho(t)||_F < 1e-8 for every sample s in the
/// window [t - 10/W, t], or until t_max. Needs W > 0.
SteadyState steady_state(const QuantumState& initial, const EvolutionSpec& spec);

/// Null-space solve L vec(rho) = 0 with Tr rho = 1; cross-check utility.
Matrix liouvillian_null_state(const Operator& h, double dephasing_rate);

}  // namespace quadspin
