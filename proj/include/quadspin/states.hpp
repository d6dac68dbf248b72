#pragma once

#include <variant>
#include <vector>

#include "quadspin/bloch.hpp"
#include "quadspin/spin_algebra.hpp"

namespace quadspin {

enum class Validation { check, skip };

/// Pure state vector (amplitudes C_m, m = I..-I) or density matrix.
class QuantumState {
 public:
  static QuantumState pure(Vector amplitudes, Validation validation = Validation::check);
  static QuantumState mixed(Matrix rho, Validation validation = Validation::check);

  bool is_pure() const { return std::holds_alternative<Vector>(data_); }
  int dim() const;
  /// Throws MixedStateUnsupported for a mixed state.
  const Vector& amplitudes() const;
  /// Density matrix; |psi><psi| for a pure state.
  Matrix density_matrix() const;

 private:
  explicit QuantumState(std::variant<Vector, Matrix> data) : data_(std::move(data)) {}
  std::variant<Vector, Matrix> data_;
};

struct ProjectionAmplitude {
  double m;
  double probability;
};

/// Coherent spin state exp(-i phi Iz) exp(-i theta Iy) |I, I>.
QuantumState css(SpinQuantumNumber spin, const BlochDirection& direction);

/// |C_m|^2 in basis order; MixedStateUnsupported for mixed input.
std::vector<ProjectionAmplitude> amplitudes(const QuantumState& state);

/// Diagonal of rho in basis order (works for either representation).
std::vector<ProjectionAmplitude> populations(const QuantumState& state);

QuantumState to_density(const QuantumState& state);

/// Tr(rho^2).
double purity(const QuantumState& state);

/// |<psi|phi>|^2, insensitive to global phase.
double fidelity(const QuantumState& a, const QuantumState& b);

Complex expectation(const Operator& a, const QuantumState& state);

/// Transverse quadrature pair (I1, I2) perpendicular to `mean_dir`.
struct TransverseAxes {
  std::array<double, 3> i1;
  std::array<double, 3> i2;
};
TransverseAxes transverse_axes(const BlochDirection& mean_dir);

/// Quadrature operator I1 sin(angle) + I2 cos(angle).
Operator quadrature_operator(SpinQuantumNumber spin, const BlochDirection& mean_dir, double angle);

/// Probabilities of `state` in the eigenbasis of the quadrature operator,
/// labelled by its eigenvalue m = I..-I.
std::vector<ProjectionAmplitude> rotate_quadrature_basis(const QuantumState& state,
                                                         const BlochDirection& mean_dir,
                                                         double angle);

}  // namespace quadspin
