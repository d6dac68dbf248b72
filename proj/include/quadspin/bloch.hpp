#pragma once

#include <array>
#include <numbers>

namespace quadspin {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Polar/azimuthal angle pair, theta in [0, pi], phi in [0, 2 pi).
class BlochDirection {
 public:
  BlochDirection() = default;
  /// Throws InvalidArgument outside the canonical ranges.
  BlochDirection(double theta, double phi);

  /// Wraps phi into [0, 2 pi) and clamps round-off in theta.
  static BlochDirection wrapped(double theta, double phi);
  /// Direction of a nonzero Cartesian vector.
  static BlochDirection from_vector(const std::array<double, 3>& v);

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  std::array<double, 3> unit_vector() const;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

}  // namespace quadspin
