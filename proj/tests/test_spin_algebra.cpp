#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadspin/errors.hpp"
#include "quadspin/spin_algebra.hpp"

using namespace quadspin;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spin matrices match the textbook construction") {
  for (int two_i = 1; two_i <= 9; ++two_i) {
    const auto ops = spin_operators(SpinQuantumNumber(two_i));
    const auto ref = oracle::spin(two_i);
    CHECK(max_abs(ops.ix.matrix() - ref.ix) < 1e-14);
    CHECK(max_abs(ops.iy.matrix() - ref.iy) < 1e-14);
    CHECK(max_abs(ops.iz.matrix() - ref.iz) < 1e-14);
    CHECK(max_abs(ops.iplus.matrix() - ref.ip) < 1e-14);
  }
}

TEST_CASE("small representations") {
  const auto half = spin_operators(SpinQuantumNumber(1));
  CHECK(half.iz(0, 0).real() == doctest::Approx(0.5));
  CHECK(half.iz(1, 1).real() == doctest::Approx(-0.5));
  CHECK(half.iplus(0, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(half.iplus(1, 0)) == 0.0);

  const auto one = spin_operators(SpinQuantumNumber(2));
  CHECK(one.ix(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(one.ix(1, 2).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto three_halves = spin_operators(SpinQuantumNumber(3));
  CHECK(max_abs(three_halves.isq.matrix() - 3.75 * Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("commutators, Casimir and ladder adjoints for I = 1/2 .. 9/2") {
  const Complex i(0.0, 1.0);
  for (int two_i = 1; two_i <= 9; ++two_i) {
    const SpinQuantumNumber spin(two_i);
    const auto o = spin_operators(spin);
    CHECK(max_abs(commutator(o.ix, o.iy).matrix() - i * o.iz.matrix()) < 1e-12);
    CHECK(max_abs(commutator(o.iy, o.iz).matrix() - i * o.ix.matrix()) < 1e-12);
    CHECK(max_abs(commutator(o.iz, o.ix).matrix() - i * o.iy.matrix()) < 1e-12);
    const Matrix cas = (o.ix * o.ix + o.iy * o.iy + o.iz * o.iz).matrix();
    CHECK(max_abs(cas - spin.casimir() * Matrix::Identity(spin.dim(), spin.dim())) < 1e-12);
    CHECK(o.iplus.adjoint().matrix() == o.iminus.matrix());
  }
}

TEST_CASE("SpinQuantumNumber rejects 2I < 1") {
  CHECK_THROWS_AS(SpinQuantumNumber(0), InvalidArgument);
  CHECK(SpinQuantumNumber(9).dim() == 10);
  CHECK(SpinQuantumNumber(9).m(0) == 4.5);
}

TEST_CASE("hermitian_eig: trivial cases") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const auto eig = hermitian_eig(Operator(d));
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));

  const auto px = hermitian_eig(spin_operators(SpinQuantumNumber(1)).ix);
  CHECK(px.eigenvalues(0) == doctest::Approx(-0.5));
  CHECK(px.eigenvalues(1) == doctest::Approx(0.5));
}

TEST_CASE("hermitian_eig: reconstruction and unitarity on random matrices") {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 10; ++d) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix a = oracle::random_hermitian(d, rng);
      const auto eig = hermitian_eig(Operator(a));
      const Matrix rec = eig.eigenvectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
      CHECK(max_abs(rec - a) <= 1e-10 * max_abs(a));
      CHECK(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(d, d)) < 1e-10);
      for (int k = 1; k < d; ++k) CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
    }
  }
}

TEST_CASE("hermitian_eig: degenerate spectra") {
  const auto o = spin_operators(SpinQuantumNumber(9));
  const auto eig = hermitian_eig(o.iz * o.iz);
  for (int k = 0; k < 10; k += 2) CHECK(eig.eigenvalues(k) == doctest::Approx(eig.eigenvalues(k + 1)).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(Operator(a)), NotHermitian);
  CHECK_THROWS_AS(Operator::hermitian(a), NotHermitian);
}

TEST_CASE("expm_unitary: identity, phases, unitarity, composition") {
  const SpinQuantumNumber half(1);
  const auto o = spin_operators(half);
  CHECK(max_abs(expm_unitary(Operator::zero(3), 1.7).matrix() - Matrix::Identity(3, 3)) < 1e-15);

  const double omega = 2.3;
  const Matrix u = expm_unitary(omega * o.iz, 2 * oracle::pi / omega).matrix();
  CHECK(max_abs(u + Matrix::Identity(2, 2)) < 1e-12);

  std::mt19937_64 rng(11);
  for (int d = 2; d <= 10; ++d) {
    const Operator h(oracle::random_hermitian(d, rng));
    const Matrix u1 = expm_unitary(h, 0.37).matrix();
    const Matrix u2 = expm_unitary(h, 1.21).matrix();
    CHECK(max_abs(u1 * u1.adjoint() - Matrix::Identity(d, d)) < 1e-10);
    CHECK(max_abs(u1 * u2 - expm_unitary(h, 1.58).matrix()) < 1e-9);
    const Matrix ref = oracle::expm(Complex(0.0, -0.37) * h.matrix());
    CHECK(max_abs(u1 - ref) < 1e-10);
  }
}

TEST_CASE("expectation values") {
  const SpinQuantumNumber spin(3);
  const auto o = spin_operators(spin);
  Vector top = Vector::Zero(4);
  top(0) = 1.0;
  CHECK(expectation(o.iz, top).real() == doctest::Approx(1.5));
  CHECK(std::abs(expectation(o.ix, top)) < 1e-15);
  const Vector eq = oracle::css(3, oracle::pi / 2, 0.3);
  CHECK(expectation(o.iz * o.iz, eq).real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(expectation(o.iz * o.iz, eq).imag()) < 1e-10);
  CHECK_THROWS_AS(expectation(o.iz, Vector(Vector::Zero(3))), DimensionMismatch);
}
