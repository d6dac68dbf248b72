#include "quadspin/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "quadspin/errors.hpp"

namespace quadspin {

namespace {

constexpr int kJacobiMaxSweeps = 64;
constexpr double kJacobiThreshold = 1e-14;

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

SpinQuantumNumber::SpinQuantumNumber(int two_i) : two_i_(two_i) {
  if (two_i < 1) {
    throw InvalidArgument("spin quantum number needs 2I >= 1, got " + std::to_string(two_i));
  }
}

Operator::Operator(Matrix entries, bool hermitian_hint)
    : entries_(std::move(entries)), hermitian_hint_(hermitian_hint) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionMismatch("operator must be square");
  }
}

Operator Operator::zero(int dim) { return Operator(Matrix::Zero(dim, dim), true); }

Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim), true); }

Operator Operator::hermitian(Matrix entries) {
  Operator op(std::move(entries), false);
  if (!op.is_hermitian()) {
    throw NotHermitian("matrix is not Hermitian within tolerance");
  }
  op.hermitian_hint_ = true;
  return op;
}

double Operator::max_norm() const {
  return entries_.size() == 0 ? 0.0 : entries_.cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const {
  const double scale = max_norm();
  if (scale == 0.0) return true;
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  return asym <= tol * scale;
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), hermitian_hint_); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator sum");
  entries_ += other.entries_;
  hermitian_hint_ = hermitian_hint_ && other.hermitian_hint_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator difference");
  entries_ -= other.entries_;
  hermitian_hint_ = hermitian_hint_ && other.hermitian_hint_;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator product");
  return Operator(a.entries_ * b.entries_, false);
}

Operator operator*(double s, const Operator& a) { return Operator(s * a.entries_, a.hermitian_hint_); }

Operator operator*(Complex s, const Operator& a) {
  return Operator(s * a.entries_, a.hermitian_hint_ && s.imag() == 0.0);
}

SpinOperators spin_operators(SpinQuantumNumber spin) {
  const int d = spin.dim();
  const double j = spin.value();
  Matrix iplus = Matrix::Zero(d, d);
  Matrix iz = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = spin.m(k);
    iz(k, k) = m;
    // I+ |m> = sqrt(I(I+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
    if (k > 0) iplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  Matrix iminus = iplus.adjoint();
  Matrix ix = 0.5 * (iplus + iminus);
  Matrix iy = (iplus - iminus) / Complex(0.0, 2.0);
  Matrix isq = ix * ix + iy * iy + iz * iz;
  return SpinOperators{
      Operator(ix, true),     Operator(iy, true),     Operator(iz, true),
      Operator(iplus, false), Operator(iminus, false), Operator(isq, true),
  };
}

EigenDecomposition hermitian_eig(const Operator& a) {
  if (!a.is_hermitian()) {
    throw NotHermitian("hermitian_eig: input fails the Hermiticity check");
  }
  const int n = a.dim();
  Matrix m = 0.5 * (a.matrix() + a.matrix().adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double scale = m.norm();

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
    if (std::sqrt(2.0 * off) <= kJacobiThreshold * scale) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase q so that the (p,q) entry is real, then a real Jacobi rotation.
        const Complex phase_conj = std::conj(apq / mag);
        const double theta = (m(q, q).real() - m(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jpp = c, jpq = s, jqp = -s * phase_conj, jqq = c * phase_conj;

        for (int k = 0; k < n; ++k) {
          const Complex mkp = m(k, p), mkq = m(k, q);
          m(k, p) = mkp * jpp + mkq * jqp;
          m(k, q) = mkp * jpq + mkq * jqq;
        }
        for (int k = 0; k < n; ++k) {
          const Complex mpk = m(p, k), mqk = m(q, k);
          m(p, k) = std::conj(jpp) * mpk + std::conj(jqp) * mqk;
          m(q, k) = std::conj(jpq) * mpk + std::conj(jqq) * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
        for (int k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return m(x, x).real() < m(y, y).real(); });
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = m(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

Operator expm_unitary(const EigenDecomposition& eig, double t) {
  const auto n = eig.eigenvalues.size();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -eig.eigenvalues(k) * t);
  return Operator(eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint(), false);
}

Operator expm_unitary(const Operator& h, double t) { return expm_unitary(hermitian_eig(h), t); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

Complex expectation(const Operator& a, const Vector& psi) {
  if (a.dim() != psi.size()) {
    throw DimensionMismatch("expectation: operator and state dimensions differ");
  }
  return psi.dot(a.matrix() * psi);
}

Complex expectation(const Operator& a, const Matrix& rho) {
  if (a.dim() != rho.rows() || rho.rows() != rho.cols()) {
    throw DimensionMismatch("expectation: operator and density matrix dimensions differ");
  }
  return (rho * a.matrix()).trace();
}

}  // namespace quadspin
