#pragma once

// Hamiltonians of a quadrupolar spin. Convention: hbar = 1, every operator
// returned here is H/hbar in rad/s; frequencies enter in Hz.

#include <array>
#include <span>

#include "quadspin/bloch.hpp"
#include "quadspin/spin_algebra.hpp"

namespace quadspin {

struct EfgParameters {
  double f_q = 1.0;  // linear quadrupolar frequency f_Q, Hz
  double eta = 0.0;  // EFG biaxiality, 0 <= eta <= 1

  void validate() const;
};

struct ZeemanParameters {
  double larmor_frequency = 0.0;  // omega_0 / 2 pi, Hz
  BlochDirection direction;       // field orientation in the EFG principal frame
};

/// Diagonal strain in the EFG principal frame plus the gradient-elastic S11.
struct StrainDiagonal {
  double eps_xx = 0.0;
  double eps_yy = 0.0;
  double eps_zz = 0.0;
  double s11 = 1.0;
};

struct EfgPrincipalValues {
  double v_xx = 0.0;
  double v_yy = 0.0;
  double v_zz = 0.0;
  double eta = 0.0;
  /// relabeling[i] is the input axis (0=x, 1=y, 2=z) that became output axis i.
  std::array<int, 3> relabeling{0, 1, 2};
};

/// (h f_Q / 6) [3 Iz^2 + eta (I+^2 + I-^2) / 2]; throws SpinTooSmall for I = 1/2.
Operator mat_hamiltonian(SpinQuantumNumber spin, const EfgParameters& efg);

/// chi Iz^2 (chi in rad/s).
Operator oat_hamiltonian(SpinQuantumNumber spin, double chi);

/// chi (Ix^2 - Iy^2) = chi (I+^2 + I-^2) / 2.
Operator tac_hamiltonian(SpinQuantumNumber spin, double chi);

/// -omega_0 (Ix sin(theta)cos(phi) + Iy sin(theta)sin(phi) + Iz cos(theta)).
Operator zeeman_hamiltonian(SpinQuantumNumber spin, const ZeemanParameters& zeeman);

/// Entrywise sum; throws DimensionMismatch or InvalidArgument on an empty list.
Operator total_hamiltonian(std::span<const Operator> parts);

/// Twisting strength that makes OAT coincide with MAT at eta = 0.
constexpr double oat_chi_for(double f_q) { return kPi * f_q; }

/// Principal EFG values from diagonal strain, relabeled |Vxx| <= |Vyy| <= |Vzz|.
EfgPrincipalValues efg_from_strain(const StrainDiagonal& strain);

/// f_Q = 3 (e^2 q Q / h) / [2I (2I - 1)].
double coupling_to_fq(double e2qQ_over_h, SpinQuantumNumber spin);

}  // namespace quadspin
