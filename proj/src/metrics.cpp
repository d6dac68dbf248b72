#include "quadspin/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>

#include "quadspin/errors.hpp"

namespace quadspin {

namespace {

/// Relative size of sqrt(A^2 + B^2) below which the uncertainty disc counts as round.
constexpr double kCircularTolerance = 1e-12;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Spin operators memoized per 2I; immutable after construction.
const SpinOperators& shared_spin_operators(SpinQuantumNumber spin) {
  constexpr int kCached = 40;
  static std::array<std::unique_ptr<SpinOperators>, kCached + 1> cache;
  static std::array<std::once_flag, kCached + 1> once;
  if (spin.two_i() > kCached) throw InvalidArgument("spin too large for the operator cache");
  const auto idx = static_cast<std::size_t>(spin.two_i());
  std::call_once(once[idx], [&] { cache[idx] = std::make_unique<SpinOperators>(spin_operators(spin)); });
  return *cache[idx];
}

struct Moments {
  std::array<double, 3> mean{};
  std::array<std::array<double, 3>, 3> second{};  // Re <I_a I_b> = <{I_a, I_b}>/2
};

Moments moments(const QuantumState& state, const SpinOperators& ops) {
  const std::array<const Matrix*, 3> comps{&ops.ix.matrix(), &ops.iy.matrix(), &ops.iz.matrix()};
  Moments out;
  if (state.is_pure()) {
    const Vector& psi = state.amplitudes();
    std::array<Vector, 3> applied;
    for (int a = 0; a < 3; ++a) applied[a] = (*comps[a]) * psi;
    for (int a = 0; a < 3; ++a) {
      out.mean[a] = psi.dot(applied[a]).real();
      for (int b = a; b < 3; ++b) {
        out.second[a][b] = out.second[b][a] = applied[a].dot(applied[b]).real();
      }
    }
    return out;
  }
  const Matrix rho = state.density_matrix();
  std::array<Matrix, 3> applied;
  for (int a = 0; a < 3; ++a) applied[a] = rho * (*comps[a]);
  for (int a = 0; a < 3; ++a) {
    out.mean[a] = applied[a].trace().real();
    for (int b = a; b < 3; ++b) {
      // Tr(rho I_a I_b)
      const double v = (applied[a].cwiseProduct(comps[b]->transpose())).sum().real();
      out.second[a][b] = out.second[b][a] = v;
    }
  }
  // Symmetrize: Re Tr(rho I_a I_b) is already the anticommutator average for Hermitian rho.
  return out;
}

double quadratic(const std::array<std::array<double, 3>, 3>& g, const std::array<double, 3>& u,
                 const std::array<double, 3>& v) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) s += u[a] * g[a][b] * v[b];
  return s;
}

}  // namespace

double SqueezingRecord::mean_spin_norm() const {
  return std::sqrt(mean_spin[0] * mean_spin[0] + mean_spin[1] * mean_spin[1] + mean_spin[2] * mean_spin[2]);
}

SqueezingRecord squeezing_parameter(const QuantumState& state, SpinQuantumNumber spin, double t) {
  if (state.dim() != spin.dim()) throw DimensionMismatch("squeezing_parameter: state dimension");
  const auto& ops = shared_spin_operators(spin);
  const Moments mom = moments(state, ops);

  SqueezingRecord rec;
  rec.t = t;
  rec.mean_spin = mom.mean;
  rec.purity = purity(state);
  const double norm = rec.mean_spin_norm();
  if (!(norm > kMeanSpinEpsilon)) {
    rec.mean_spin_defined = false;
    rec.xi_s = rec.xi_r = kNaN;
    rec.var_min = rec.var_max = kNaN;
    rec.optimal_angle = kNaN;
    rec.a = rec.b = rec.c = kNaN;
    return rec;
  }

  const double theta = std::acos(std::clamp(mom.mean[2] / norm, -1.0, 1.0));
  const double phi = std::atan2(mom.mean[1], mom.mean[0]);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const std::array<double, 3> u{-sp, cp, 0.0};
  const std::array<double, 3> v{-ct * cp, -ct * sp, st};

  const double uu = quadratic(mom.second, u, u);
  const double vv = quadratic(mom.second, v, v);
  const double uv = quadratic(mom.second, u, v);
  rec.a = uu - vv;
  rec.b = 2.0 * uv;
  rec.c = uu + vv;
  const double r = std::hypot(rec.a, rec.b);
  rec.var_min = 0.5 * (rec.c - r);
  rec.var_max = 0.5 * (rec.c + r);

  const double half_spin = 0.5 * spin.value();
  rec.xi_s = std::sqrt(std::max(rec.var_min, 0.0) / half_spin);
  rec.xi_r = spin.value() / norm * rec.xi_s;

  if (r <= kCircularTolerance * rec.c) {
    // Circular uncertainty (up to round-off): every angle is minimal.
    rec.optimal_angle = 0.0;
  } else {
    double alpha = 0.5 * std::atan2(-rec.b, rec.a);
    if (alpha < 0.0) alpha += kPi;
    rec.optimal_angle = alpha;
  }
  return rec;
}

double squeezing_rate(double spin_value, double eta, double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double first = eta * std::cos(2.0 * phi) * (1.0 + c * c) + 3.0 * s * s;
  const double s2p = std::sin(2.0 * phi);
  const double second = 4.0 * eta * eta * c * c * s2p * s2p;
  return 2.0 * spin_value * std::sqrt(first * first + second);
}

double squeezing_rate(SpinQuantumNumber spin, double eta, const BlochDirection& css_direction) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  return squeezing_rate(spin.value(), eta, css_direction.theta(), css_direction.phi());
}

SpeedBound speed_bound(const QuantumState& initial, const Operator& h) {
  if (initial.dim() != h.dim()) throw DimensionMismatch("speed_bound: dimension mismatch");
  const auto eig = hermitian_eig(h);
  const double mean = expectation(h, initial).real();
  const Matrix shifted = h.matrix() - mean * Matrix::Identity(h.dim(), h.dim());

  double variance = 0.0;
  if (initial.is_pure()) {
    variance = (shifted * initial.amplitudes()).squaredNorm();
  } else {
    const auto rho_eig = hermitian_eig(Operator(initial.density_matrix()));
    for (Eigen::Index k = 0; k < rho_eig.eigenvalues.size(); ++k) {
      const double p = std::max(rho_eig.eigenvalues(k), 0.0);
      variance += p * (shifted * rho_eig.eigenvectors.col(k)).squaredNorm();
    }
  }

  SpeedBound out;
  out.energy = std::max(mean - eig.eigenvalues(0), 0.0);
  out.energy_spread = std::sqrt(variance);
  constexpr double kZero = 1e-12;
  if (out.energy <= kZero && out.energy_spread <= kZero) {
    throw InfiniteBound("input is a ground eigenstate: E = dE = 0");
  }
  const double inf = std::numeric_limits<double>::infinity();
  const double from_energy = out.energy <= kZero ? inf : kPi / (2.0 * out.energy);
  const double from_spread = out.energy_spread <= kZero ? inf : kPi / (2.0 * out.energy_spread);
  out.tau_perp_lower = std::max(from_energy, from_spread);
  return out;
}

DutyCycle duty_cycle(const std::vector<SqueezingRecord>& series) {
  DutyCycle out;
  for (const auto& rec : series) {
    if (!rec.mean_spin_defined) {
      ++out.undefined;
      continue;
    }
    ++out.defined;
    if (rec.xi_s <= 1.0 + kSqueezedThresholdSlack) ++out.squeezed;
  }
  out.value = out.defined == 0 ? kNaN : static_cast<double>(out.squeezed) / static_cast<double>(out.defined);
  return out;
}

DutyCycle duty_cycle(const Trajectory& trajectory, SpinQuantumNumber spin) {
  return duty_cycle(squeezing_series(trajectory, spin));
}

BandStatistics band_statistics(const std::vector<SqueezingRecord>& series) {
  BandStatistics out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), 0.0, 0};
  std::size_t defined = 0;
  for (const auto& rec : series) {
    if (!rec.mean_spin_defined) {
      ++out.undefined;
      continue;
    }
    ++defined;
    out.xi_min = std::min(out.xi_min, rec.xi_s);
    out.xi_max = std::max(out.xi_max, rec.xi_s);
    out.xi_mean += rec.xi_s;
  }
  if (defined == 0) return BandStatistics{kNaN, kNaN, kNaN, out.undefined};
  // Rounding in the sum can push the mean of a flat series an ulp outside its range.
  out.xi_mean = std::clamp(out.xi_mean / static_cast<double>(defined), out.xi_min, out.xi_max);
  return out;
}

BandStatistics band_statistics(const Trajectory& trajectory, SpinQuantumNumber spin) {
  return band_statistics(squeezing_series(trajectory, spin));
}

std::vector<SqueezingRecord> squeezing_series(const Trajectory& trajectory, SpinQuantumNumber spin,
                                              Parallelism parallelism) {
  std::vector<SqueezingRecord> out(trajectory.states.size());
  parallel_for(out.size(), parallelism, [&](std::size_t k) {
    out[k] = squeezing_parameter(trajectory.states[k], spin, trajectory.times[k]);
  });
  return out;
}

std::vector<SqueezingRecord> squeezing_series_serial(const Trajectory& trajectory, SpinQuantumNumber spin) {
  std::vector<SqueezingRecord> out;
  out.reserve(trajectory.states.size());
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    out.push_back(squeezing_parameter(trajectory.states[k], spin, trajectory.times[k]));
  }
  return out;
}

std::vector<double> rate_map(SpinQuantumNumber spin, double eta, int n_theta, int n_phi,
                             Parallelism parallelism) {
  if (n_theta < 2 || n_phi < 1) throw InvalidArgument("rate_map: grid too small");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidArgument("eta must lie in [0, 1]");
  std::vector<double> out(static_cast<std::size_t>(n_theta) * n_phi);
  parallel_for(static_cast<std::size_t>(n_theta), parallelism, [&](std::size_t i) {
    const double theta = lattice_theta(static_cast<int>(i), n_theta);
    for (int j = 0; j < n_phi; ++j) {
      out[i * n_phi + j] = squeezing_rate(spin.value(), eta, theta, lattice_phi(j, n_phi));
    }
  });
  return out;
}

std::vector<double> rate_map_serial(SpinQuantumNumber spin, double eta, int n_theta, int n_phi) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int i = 0; i < n_theta; ++i)
    for (int j = 0; j < n_phi; ++j)
      out.push_back(squeezing_rate(spin, eta, BlochDirection::wrapped(lattice_theta(i, n_theta), lattice_phi(j, n_phi))));
  return out;
}

}  // namespace quadspin
