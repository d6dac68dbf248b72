#include "quadspin/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "quadspin/errors.hpp"

namespace quadspin {

namespace {

void require_quadrupolar(SpinQuantumNumber spin) {
  if (spin.two_i() < 2) {
    throw SpinTooSmall("quadrupole coupling needs I >= 1, got 2I = " + std::to_string(spin.two_i()));
  }
}

}  // namespace

void EfgParameters::validate() const {
  if (!(f_q > 0.0) || !std::isfinite(f_q)) throw InvalidArgument("f_q must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
}

Operator mat_hamiltonian(SpinQuantumNumber spin, const EfgParameters& efg) {
  require_quadrupolar(spin);
  efg.validate();
  const auto ops = spin_operators(spin);
  const Matrix& iz = ops.iz.matrix();
  const Matrix& ip = ops.iplus.matrix();
  const Matrix& im = ops.iminus.matrix();
  const double prefactor = kTwoPi * efg.f_q / 6.0;
  Matrix h = prefactor * (3.0 * iz * iz + 0.5 * efg.eta * (ip * ip + im * im));
  return Operator(std::move(h), true);
}

Operator oat_hamiltonian(SpinQuantumNumber spin, double chi) {
  const auto ops = spin_operators(spin);
  const Matrix& iz = ops.iz.matrix();
  return Operator(chi * iz * iz, true);
}

Operator tac_hamiltonian(SpinQuantumNumber spin, double chi) {
  const auto ops = spin_operators(spin);
  const Matrix& ip = ops.iplus.matrix();
  const Matrix& im = ops.iminus.matrix();
  return Operator(0.5 * chi * (ip * ip + im * im), true);
}

Operator zeeman_hamiltonian(SpinQuantumNumber spin, const ZeemanParameters& zeeman) {
  if (!(zeeman.larmor_frequency >= 0.0)) throw InvalidArgument("Larmor frequency must be >= 0");
  const auto ops = spin_operators(spin);
  const auto n = zeeman.direction.unit_vector();
  const double omega0 = kTwoPi * zeeman.larmor_frequency;
  Matrix h = -omega0 * (n[0] * ops.ix.matrix() + n[1] * ops.iy.matrix() + n[2] * ops.iz.matrix());
  return Operator(std::move(h), true);
}

Operator total_hamiltonian(std::span<const Operator> parts) {
  if (parts.empty()) throw InvalidArgument("total_hamiltonian: no parts");
  Operator sum = parts.front();
  for (const auto& part : parts.subspan(1)) sum += part;
  return sum;
}

EfgPrincipalValues efg_from_strain(const StrainDiagonal& strain) {
  const std::array<double, 3> eps{strain.eps_xx, strain.eps_yy, strain.eps_zz};
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    v[i] = strain.s11 * (eps[i] - 0.5 * (eps[j] + eps[k]));
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(v[a]) < std::abs(v[b]); });

  EfgPrincipalValues out;
  out.v_xx = v[order[0]];
  out.v_yy = v[order[1]];
  out.v_zz = v[order[2]];
  out.relabeling = order;

  const double scale = std::abs(strain.s11) *
                       std::max({std::abs(eps[0]), std::abs(eps[1]), std::abs(eps[2])});
  if (out.v_zz == 0.0 || std::abs(out.v_zz) <= 1e-14 * scale) {
    throw DegenerateEfg("isotropic strain: V_zz vanishes and eta is undefined");
  }
  out.eta = std::clamp((out.v_xx - out.v_yy) / out.v_zz, 0.0, 1.0);
  return out;
}

double coupling_to_fq(double e2qQ_over_h, SpinQuantumNumber spin) {
  require_quadrupolar(spin);
  const double two_i = spin.two_i();
  return 3.0 * e2qQ_over_h / (two_i * (two_i - 1.0));
}

}  // namespace quadspin
