#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "quadspin/errors.hpp"
#include "quadspin/model.hpp"

using namespace quadspin;

namespace {
double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
constexpr double kH = 2.0 * oracle::pi;  // h in units of hbar
}  // namespace

TEST_CASE("MAT at I = 3/2, eta = 0 is diagonal 3 m^2 / 6") {
  const Operator h = mat_hamiltonian(SpinQuantumNumber(3), EfgParameters{1.0, 0.0});
  const std::vector<double> expect{1.125, 0.125, 0.125, 1.125};
  for (int k = 0; k < 4; ++k) CHECK(h(k, k).real() / kH == doctest::Approx(expect[k]).epsilon(1e-14));
  CHECK(max_abs(h.matrix() - Matrix(h.matrix().diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("MAT at eta = 0 equals OAT with chi = pi f_Q") {
  for (int two_i = 2; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    for (double fq : {1.0, 2.5}) {
      const Matrix diff = mat_hamiltonian(s, {fq, 0.0}).matrix() - oat_hamiltonian(s, oat_chi_for(fq)).matrix();
      CHECK(max_abs(diff) < 1e-12);
    }
  }
}

TEST_CASE("eta = 1 identity: 3Iz^2 + (I+^2 + I-^2)/2 = Isq + 2Iz^2 - 2Iy^2") {
  for (int two_i = 1; two_i <= 9; ++two_i) {
    const auto o = spin_operators(SpinQuantumNumber(two_i));
    const Matrix lhs = (3.0 * (o.iz * o.iz) + 0.5 * (o.iplus * o.iplus + o.iminus * o.iminus)).matrix();
    const Matrix rhs = (o.isq + 2.0 * (o.iz * o.iz) - 2.0 * (o.iy * o.iy)).matrix();
    CHECK(max_abs(lhs - rhs) < 1e-12);
    if (two_i >= 2) {
      const Matrix mat = mat_hamiltonian(SpinQuantumNumber(two_i), {1.0, 1.0}).matrix();
      CHECK(max_abs(mat - (kH / 6.0) * rhs) < 1e-12);
    }
  }
}

TEST_CASE("MAT is Hermitian and affine in eta") {
  for (int two_i = 2; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    const Matrix h0 = mat_hamiltonian(s, {1.0, 0.0}).matrix();
    const Matrix h1 = mat_hamiltonian(s, {1.0, 1.0}).matrix();
    for (double eta : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const Operator h = mat_hamiltonian(s, {1.0, eta});
      CHECK(max_abs(h.matrix() - h.matrix().adjoint()) < 1e-12);
      CHECK(max_abs(h.matrix() - (h0 + eta * (h1 - h0))) < 1e-12);
    }
  }
}

TEST_CASE("MAT spectrum at I = 3/2 matches the block characteristic polynomials") {
  for (double eta : {0.0, 0.5, 1.0}) {
    const auto eig = hermitian_eig(mat_hamiltonian(SpinQuantumNumber(3), {1.0, eta}));
    const auto ref = oracle::mat_spectrum_three_halves(eta);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(eig.eigenvalues(k) - ref[static_cast<std::size_t>(k)]) < 1e-10);
  }
}

TEST_CASE("MAT rejects I = 1/2 and invalid parameters") {
  CHECK_THROWS_AS(mat_hamiltonian(SpinQuantumNumber(1), {1.0, 0.0}), SpinTooSmall);
  CHECK_THROWS_AS(mat_hamiltonian(SpinQuantumNumber(3), {1.0, 1.5}), InvalidArgument);
  CHECK_THROWS_AS(mat_hamiltonian(SpinQuantumNumber(3), {-1.0, 0.5}), InvalidArgument);
}

TEST_CASE("OAT") {
  const Operator h = oat_hamiltonian(SpinQuantumNumber(2), 1.0);
  CHECK(h(0, 0).real() == 1.0);
  CHECK(h(1, 1).real() == 0.0);
  CHECK(h(2, 2).real() == 1.0);
  const auto o = spin_operators(SpinQuantumNumber(7));
  const Operator h7 = oat_hamiltonian(SpinQuantumNumber(7), 0.8);
  CHECK(max_abs(commutator(h7, o.iz).matrix()) == 0.0);
  const auto eig = hermitian_eig(h7);
  std::vector<double> ref;
  for (int k = 0; k < 8; ++k) ref.push_back(0.8 * (3.5 - k) * (3.5 - k));
  std::sort(ref.begin(), ref.end());
  for (int k = 0; k < 8; ++k) CHECK(eig.eigenvalues(k) == doctest::Approx(ref[static_cast<std::size_t>(k)]).epsilon(1e-12));
}

TEST_CASE("TAC") {
  for (int two_i = 2; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    const Operator h = tac_hamiltonian(s, 1.3);
    CHECK(h.matrix().trace().real() == 0.0);
    CHECK(max_abs(Matrix(h.matrix().diagonal().asDiagonal())) == 0.0);
    // MAT(eta = 1) = (h f_Q / 6) 3 Iz^2 + (h f_Q / 6) (I+^2 + I-^2)/2.
    const Matrix mat = mat_hamiltonian(s, {1.0, 1.0}).matrix();
    const Matrix diag_part = oat_hamiltonian(s, oat_chi_for(1.0)).matrix();
    CHECK(max_abs(mat - diag_part - tac_hamiltonian(s, kH / 6.0).matrix()) < 1e-12);
  }
  const Operator h1 = tac_hamiltonian(SpinQuantumNumber(2), 1.0);
  CHECK(h1(0, 2).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h1(2, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(h1(0, 1)) == 0.0);
  CHECK(std::abs(h1(1, 2)) == 0.0);
}

TEST_CASE("Zeeman") {
  const SpinQuantumNumber s(5);
  const auto o = spin_operators(s);
  const double w = 1.7;
  const Operator hz = zeeman_hamiltonian(s, {w / kH, BlochDirection(0.0, 0.0)});
  CHECK(max_abs(hz.matrix() + w * o.iz.matrix()) < 1e-12);
  const Operator hx = zeeman_hamiltonian(s, {w / kH, BlochDirection(oracle::pi / 2, 0.0)});
  CHECK(max_abs(hx.matrix() + w * o.ix.matrix()) < 1e-12);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, oracle::pi), ph(0.0, 2 * oracle::pi);
  const auto ref = hermitian_eig(Operator(-w * o.iz.matrix()));
  for (int rep = 0; rep < 20; ++rep) {
    const auto eig = hermitian_eig(zeeman_hamiltonian(s, {w / kH, BlochDirection(th(rng), ph(rng))}));
    CHECK((eig.eigenvalues - ref.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("total_hamiltonian") {
  const SpinQuantumNumber s(4);
  const Operator a = mat_hamiltonian(s, {1.0, 0.3});
  const Operator b = zeeman_hamiltonian(s, {0.4, BlochDirection(1.0, 2.0)});
  const std::vector<Operator> ab{a, b}, ba{b, a}, az{a, Operator::zero(5)};
  CHECK(max_abs(total_hamiltonian(ab).matrix() - total_hamiltonian(ba).matrix()) == 0.0);
  CHECK(max_abs(total_hamiltonian(az).matrix() - a.matrix()) == 0.0);
  const std::vector<Operator> bad{a, Operator::zero(3)};
  CHECK_THROWS_AS(total_hamiltonian(bad), DimensionMismatch);
  const Matrix sum = a.matrix() + b.matrix();
  const auto eig = hermitian_eig(total_hamiltonian(ab));
  const Eigen::SelfAdjointEigenSolver<Matrix> ref(sum);
  CHECK((eig.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("efg_from_strain") {
  const double e = 0.01;
  const auto v = efg_from_strain({0.0, -e, e, 1.0});
  CHECK(std::abs(v.v_xx) < 1e-15);
  CHECK(std::abs(std::abs(v.v_yy) - 1.5 * e) < 1e-15);
  CHECK(std::abs(std::abs(v.v_zz) - 1.5 * e) < 1e-15);
  CHECK(v.eta == doctest::Approx(1.0));

  CHECK_THROWS_AS(efg_from_strain({e, e, e, 1.0}), DegenerateEfg);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto p = efg_from_strain({g(rng), g(rng), g(rng), 1.0 + std::abs(g(rng))});
    CHECK(std::abs(p.v_xx) <= std::abs(p.v_yy));
    CHECK(std::abs(p.v_yy) <= std::abs(p.v_zz));
    CHECK(p.eta >= 0.0);
    CHECK(p.eta <= 1.0);
    std::array<int, 3> perm = p.relabeling;
    std::sort(perm.begin(), perm.end());
    CHECK(perm == std::array<int, 3>{0, 1, 2});
  }
}

TEST_CASE("coupling_to_fq") {
  CHECK(coupling_to_fq(1.0, SpinQuantumNumber(3)) == doctest::Approx(0.5));
  CHECK(coupling_to_fq(24.0, SpinQuantumNumber(9)) == doctest::Approx(1.0));
  CHECK(coupling_to_fq(1.0, SpinQuantumNumber(2)) == doctest::Approx(1.5));
  CHECK_THROWS_AS(coupling_to_fq(1.0, SpinQuantumNumber(1)), SpinTooSmall);
}
