#pragma once

// Dense spin-operator algebra for a single spin I, basis |I,m> with
// m = I, I-1, ..., -I (descending) everywhere in the library.

#include <complex>

#include <Eigen/Dense>

namespace quadspin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative (max-norm) tolerance used for every Hermiticity check.
inline constexpr double kHermitianTolerance = 1e-10;

/// Spin quantum number stored as the integer 2I.
class SpinQuantumNumber {
 public:
  explicit SpinQuantumNumber(int two_i);

  int two_i() const { return two_i_; }
  double value() const { return 0.5 * two_i_; }
  int dim() const { return two_i_ + 1; }
  /// Magnetic quantum number of basis index `index` (0 -> m = I).
  double m(int index) const { return value() - index; }
  /// I(I+1)
  double casimir() const { return value() * (value() + 1.0); }

  friend bool operator==(SpinQuantumNumber, SpinQuantumNumber) = default;

 private:
  int two_i_;
};

/// Square complex matrix with a cached Hermiticity flag.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix entries, bool hermitian_hint = false);

  static Operator zero(int dim);
  static Operator identity(int dim);
  /// Symmetric/Hermitian construction; throws NotHermitian if the check fails.
  static Operator hermitian(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }
  bool hermitian_hint() const { return hermitian_hint_; }

  /// max |A_ij - conj(A_ji)| <= tol * max|A_ij|.
  bool is_hermitian(double tol = kHermitianTolerance) const;
  double max_norm() const;
  Operator adjoint() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(double s, const Operator& a);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  Matrix entries_;
  bool hermitian_hint_ = false;
};

struct SpinOperators {
  Operator ix, iy, iz, iplus, iminus, isq;
};

SpinOperators spin_operators(SpinQuantumNumber spin);

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, one eigenvector per column
};

/// Cyclic complex Jacobi; throws NotHermitian on non-Hermitian input.
EigenDecomposition hermitian_eig(const Operator& a);

/// exp(-i H t) with hbar = 1 (H in rad/s, t in seconds).
Operator expm_unitary(const Operator& h, double t);
Operator expm_unitary(const EigenDecomposition& eig, double t);

Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// <psi|A|psi>
Complex expectation(const Operator& a, const Vector& psi);
/// Tr(rho A)
Complex expectation(const Operator& a, const Matrix& rho);

}  // namespace quadspin
