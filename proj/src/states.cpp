#include "quadspin/states.hpp"

#include <algorithm>
#include <cmath>

#include "quadspin/errors.hpp"

namespace quadspin {

BlochDirection::BlochDirection(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw InvalidArgument("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < kTwoPi)) throw InvalidArgument("phi must lie in [0, 2 pi)");
}

BlochDirection BlochDirection::wrapped(double theta, double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  if (p >= kTwoPi) p = 0.0;
  return BlochDirection(std::clamp(theta, 0.0, kPi), p);
}

BlochDirection BlochDirection::from_vector(const std::array<double, 3>& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(r > 0.0)) throw InvalidArgument("direction of a zero vector");
  return wrapped(std::acos(std::clamp(v[2] / r, -1.0, 1.0)), std::atan2(v[1], v[0]));
}

std::array<double, 3> BlochDirection::unit_vector() const {
  return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_), std::cos(theta_)};
}

QuantumState QuantumState::pure(Vector amplitudes, Validation validation) {
  if (validation == Validation::check) {
    if (amplitudes.size() == 0) throw InvalidState("empty state vector");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-10) {
      throw InvalidState("state vector is not normalized");
    }
  }
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::mixed(Matrix rho, Validation validation) {
  if (validation == Validation::check) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw InvalidState("density matrix must be square");
    const Operator op(rho);
    if (!op.is_hermitian()) throw InvalidState("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10) throw InvalidState("density matrix trace != 1");
    if (hermitian_eig(op).eigenvalues(0) < -1e-9) throw InvalidState("density matrix is not positive");
  }
  return QuantumState(std::move(rho));
}

int QuantumState::dim() const {
  return std::visit([](const auto& d) { return static_cast<int>(d.rows()); }, data_);
}

const Vector& QuantumState::amplitudes() const {
  if (const auto* v = std::get_if<Vector>(&data_)) return *v;
  throw MixedStateUnsupported("amplitudes requested from a mixed state; use populations");
}

Matrix QuantumState::density_matrix() const {
  if (const auto* v = std::get_if<Vector>(&data_)) return (*v) * v->adjoint();
  return std::get<Matrix>(data_);
}

QuantumState css(SpinQuantumNumber spin, const BlochDirection& direction) {
  const auto ops = spin_operators(spin);
  Vector top = Vector::Zero(spin.dim());
  top(0) = 1.0;
  Vector psi = expm_unitary(ops.iy, direction.theta()).matrix() * top;
  for (int k = 0; k < spin.dim(); ++k) psi(k) *= std::polar(1.0, -direction.phi() * spin.m(k));
  return QuantumState::pure(std::move(psi));
}

std::vector<ProjectionAmplitude> amplitudes(const QuantumState& state) {
  const Vector& psi = state.amplitudes();
  const int d = state.dim();
  const double j = 0.5 * (d - 1);
  std::vector<ProjectionAmplitude> out;
  out.reserve(d);
  for (int k = 0; k < d; ++k) out.push_back({j - k, std::norm(psi(k))});
  return out;
}

std::vector<ProjectionAmplitude> populations(const QuantumState& state) {
  if (state.is_pure()) return amplitudes(state);
  const Matrix rho = state.density_matrix();
  const int d = state.dim();
  const double j = 0.5 * (d - 1);
  std::vector<ProjectionAmplitude> out;
  out.reserve(d);
  for (int k = 0; k < d; ++k) out.push_back({j - k, rho(k, k).real()});
  return out;
}

QuantumState to_density(const QuantumState& state) {
  return QuantumState::mixed(state.density_matrix(), Validation::skip);
}

double purity(const QuantumState& state) {
  if (state.is_pure()) {
    const double n = state.amplitudes().squaredNorm();
    return n * n;
  }
  const Matrix rho = state.density_matrix();
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.squaredNorm();
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity: dimension mismatch");
  if (a.is_pure() && b.is_pure()) return std::norm(a.amplitudes().dot(b.amplitudes()));
  if (a.is_pure()) return expectation(Operator(b.density_matrix()), a.amplitudes()).real();
  if (b.is_pure()) return expectation(Operator(a.density_matrix()), b.amplitudes()).real();
  throw MixedStateUnsupported("fidelity between two mixed states is not provided");
}

Complex expectation(const Operator& a, const QuantumState& state) {
  if (state.is_pure()) return expectation(a, state.amplitudes());
  return expectation(a, state.density_matrix());
}

TransverseAxes transverse_axes(const BlochDirection& mean_dir) {
  const double st = std::sin(mean_dir.theta()), ct = std::cos(mean_dir.theta());
  const double sp = std::sin(mean_dir.phi()), cp = std::cos(mean_dir.phi());
  return TransverseAxes{{-sp, cp, 0.0}, {-ct * cp, -ct * sp, st}};
}

Operator quadrature_operator(SpinQuantumNumber spin, const BlochDirection& mean_dir, double angle) {
  const auto ops = spin_operators(spin);
  const auto axes = transverse_axes(mean_dir);
  const double s = std::sin(angle), c = std::cos(angle);
  std::array<double, 3> n{};
  for (int a = 0; a < 3; ++a) n[a] = s * axes.i1[a] + c * axes.i2[a];
  Matrix q = n[0] * ops.ix.matrix() + n[1] * ops.iy.matrix() + n[2] * ops.iz.matrix();
  return Operator(std::move(q), true);
}

std::vector<ProjectionAmplitude> rotate_quadrature_basis(const QuantumState& state,
                                                         const BlochDirection& mean_dir,
                                                         double angle) {
  const Vector& psi = state.amplitudes();
  const SpinQuantumNumber spin(state.dim() - 1);
  const auto eig = hermitian_eig(quadrature_operator(spin, mean_dir, angle));
  // Ascending eigenvalues -I..I; report in basis order m = I..-I.
  const int d = state.dim();
  std::vector<ProjectionAmplitude> out;
  out.reserve(d);
  for (int k = 0; k < d; ++k) {
    const int col = d - 1 - k;
    out.push_back({spin.m(k), std::norm(eig.eigenvectors.col(col).dot(psi))});
  }
  return out;
}

}  // namespace quadspin
