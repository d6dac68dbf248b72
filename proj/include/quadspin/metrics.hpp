#pragma once

// Squeezing figures of merit: Kitagawa-Ueda xi_S with the transverse
// minimum variance, Wineland xi_R, the closed-form squeezing rate Q,
// Margolus-Levitin speed bound, duty cycle and band statistics.

#include <array>
#include <cstddef>
#include <vector>

#include "quadspin/bloch.hpp"
#include "quadspin/dynamics.hpp"
#include "quadspin/parallel.hpp"
#include "quadspin/spin_algebra.hpp"
#include "quadspin/states.hpp"

namespace quadspin {

/// Below this |<I>| the mean-spin direction is treated as undefined.
inline constexpr double kMeanSpinEpsilon = 1e-8;

/// Numerical resolution of "xi_S <= 1" (the CSS contract holds to 1e-9).
inline constexpr double kSqueezedThresholdSlack = 1e-9;

struct SqueezingRecord {
  double t = 0.0;
  double xi_s = 0.0;
  double xi_r = 0.0;
  std::array<double, 3> mean_spin{};
  double var_min = 0.0;
  double var_max = 0.0;
  /// Angle alpha of I1 sin(alpha) + I2 cos(alpha) with minimal variance, [0, pi).
  double optimal_angle = 0.0;
  double purity = 1.0;
  double a = 0.0;  // <I1^2 - I2^2>
  double b = 0.0;  // <I1 I2 + I2 I1>
  double c = 0.0;  // <I1^2 + I2^2>
  /// False when |<I>| <= kMeanSpinEpsilon; xi fields are then NaN.
  bool mean_spin_defined = true;

  double mean_spin_norm() const;
  BlochDirection mean_direction() const { return BlochDirection::from_vector(mean_spin); }
};

SqueezingRecord squeezing_parameter(const QuantumState& state, SpinQuantumNumber spin, double t = 0.0);

/// Q = 2I sqrt{[eta cos2phi (1 + cos^2 theta) + 3 sin^2 theta]^2 + 4 eta^2 cos^2 theta sin^2 2phi}.
double squeezing_rate(SpinQuantumNumber spin, double eta, const BlochDirection& css_direction);
/// Same closed form without range checks on the angles (grid and random sampling).
double squeezing_rate(double spin_value, double eta, double theta, double phi);

struct SpeedBound {
  double energy;        // <H> - lambda_min(H), rad/s
  double energy_spread; // sqrt(<H^2> - <H>^2), rad/s
  double tau_perp_lower;// seconds; +inf when only one of the two vanishes
};

/// Throws InfiniteBound when both E and dE are <= 1e-12 (ground eigenstate).
SpeedBound speed_bound(const QuantumState& initial, const Operator& h);

struct DutyCycle {
  double value = 0.0;            // fraction of defined samples with xi_S <= 1
  std::size_t squeezed = 0;
  std::size_t defined = 0;
  std::size_t undefined = 0;     // samples excluded for an undefined mean spin
};

DutyCycle duty_cycle(const std::vector<SqueezingRecord>& series);
DutyCycle duty_cycle(const Trajectory& trajectory, SpinQuantumNumber spin);

struct BandStatistics {
  double xi_min = 0.0;
  double xi_max = 0.0;
  double xi_mean = 0.0;
  std::size_t undefined = 0;
};

BandStatistics band_statistics(const std::vector<SqueezingRecord>& series);
BandStatistics band_statistics(const Trajectory& trajectory, SpinQuantumNumber spin);

/// Per-sample records, parallel over samples; output order follows the input.
std::vector<SqueezingRecord> squeezing_series(const Trajectory& trajectory, SpinQuantumNumber spin,
                                              Parallelism parallelism = {});
/// Serial reference of squeezing_series.
std::vector<SqueezingRecord> squeezing_series_serial(const Trajectory& trajectory, SpinQuantumNumber spin);

/// Q over a (theta, phi) lattice, row-major theta then phi; parallel over rows.
std::vector<double> rate_map(SpinQuantumNumber spin, double eta, int n_theta, int n_phi,
                             Parallelism parallelism = {});
std::vector<double> rate_map_serial(SpinQuantumNumber spin, double eta, int n_theta, int n_phi);

/// Lattice node used by rate_map: theta uniform on [0, pi], phi uniform on [0, 2 pi).
inline double lattice_theta(int i, int n_theta) { return kPi * i / (n_theta - 1); }
inline double lattice_phi(int j, int n_phi) { return kTwoPi * j / n_phi; }

}  // namespace quadspin
