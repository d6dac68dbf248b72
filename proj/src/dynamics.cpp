#include "quadspin/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "quadspin/errors.hpp"
#include "quadspin/metrics.hpp"

namespace quadspin {

namespace {

using StopSink = std::function<bool(std::size_t, double, const QuantumState&)>;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients of the continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

constexpr std::size_t kMaxRkSteps = 200'000'000;

/// Dissipator weights -W (m_i - m_j)^2 / 2: Iz is diagonal in the basis.
Matrix dephasing_weights(int d, double w) {
  Matrix out(d, d);
  const double j = 0.5 * (d - 1);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const double dm = (j - r) - (j - c);
      out(r, c) = -0.5 * w * dm * dm;
    }
  return out;
}

struct Rhs {
  Matrix h;
  Matrix weights;
  Matrix operator()(const Matrix& rho) const {
    Matrix comm = h * rho - rho * h;
    return Complex(0.0, -1.0) * comm + weights.cwiseProduct(rho);
  }
};

Vector vec(const Matrix& rho) {
  const auto d = rho.rows();
  Vector out(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i * d + j) = rho(i, j);
  return out;
}

Matrix unvec(const Vector& v, Eigen::Index d) {
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = v(i * d + j);
  return out;
}

QuantumState as_state(Matrix rho) { return QuantumState::mixed(std::move(rho), Validation::skip); }

void run_unitary(const QuantumState& initial, const EvolutionSpec& spec, const StopSink& sink) {
  const auto eig = hermitian_eig(spec.hamiltonian);
  const Vector coeffs = eig.eigenvectors.adjoint() * initial.amplitudes();
  const std::size_t n = spec.sample_count();
  Vector rotated(coeffs.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = spec.sample_time(k);
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
      rotated(i) = std::polar(1.0, -eig.eigenvalues(i) * t) * coeffs(i);
    if (!sink(k, t, QuantumState::pure(eig.eigenvectors * rotated, Validation::skip))) return;
  }
}

void run_superoperator(const Matrix& rho0, const EvolutionSpec& spec, const StopSink& sink) {
  const auto d = rho0.rows();
  const Matrix step = (liouvillian(spec.hamiltonian, spec.dephasing_rate) * spec.dt_sample).exp();
  Vector x = vec(rho0);
  const std::size_t n = spec.sample_count();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) x = step * x;
    if (!sink(k, spec.sample_time(k), as_state(unvec(x, d)))) return;
  }
}

void run_rk4(const Matrix& rho0, const EvolutionSpec& spec, const StopSink& sink) {
  const Rhs f{spec.hamiltonian.matrix(), dephasing_weights(static_cast<int>(rho0.rows()), spec.dephasing_rate)};
  const std::size_t substeps =
      spec.rk4_step > 0.0
          ? std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spec.dt_sample / spec.rk4_step - 1e-9)))
          : 1;
  const double h = spec.dt_sample / static_cast<double>(substeps);
  Matrix y = rho0;
  const std::size_t n = spec.sample_count();
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      for (std::size_t s = 0; s < substeps; ++s) {
        const Matrix k1 = f(y);
        const Matrix k2 = f(y + (0.5 * h) * k1);
        const Matrix k3 = f(y + (0.5 * h) * k2);
        const Matrix k4 = f(y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      if (!y.allFinite()) throw IntegratorDiverged("rk4 produced non-finite values");
    }
    if (!sink(k, spec.sample_time(k), as_state(y))) return;
  }
}

void run_rk45(const Matrix& rho0, const EvolutionSpec& spec, const StopSink& sink) {
  const Rhs f{spec.hamiltonian.matrix(), dephasing_weights(static_cast<int>(rho0.rows()), spec.dephasing_rate)};
  const std::size_t n = spec.sample_count();
  const double t_end = spec.sample_time(n - 1);
  const double rtol = spec.rk_tolerance, atol = spec.rk_abs_tolerance;
  const double h_min = 1e-14 * std::max(1.0, t_end);

  Matrix y = rho0;
  if (!sink(0, 0.0, as_state(y)) || n == 1) return;

  Matrix k1 = f(y);
  // Initial step from the generator's scale.
  const double scale = std::max(f.h.cwiseAbs().maxCoeff(), f.weights.cwiseAbs().maxCoeff());
  double h = scale > 0.0 ? std::min(spec.dt_sample, 0.01 / scale) : spec.dt_sample;
  double t = 0.0;
  std::size_t next = 1;
  const double elements = static_cast<double>(y.size());

  for (std::size_t steps = 0; next < n; ++steps) {
    if (steps > kMaxRkSteps) throw IntegratorDiverged("rk45 exceeded the step budget");
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    const Matrix k2 = f(y + h * (a21 * k1));
    const Matrix k3 = f(y + h * (a31 * k1 + a32 * k2));
    const Matrix k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Matrix k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Matrix k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Matrix y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Matrix k7 = f(y_new);
    const Matrix err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = atol + rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      const double r = std::abs(err_vec(i)) / sc;
      err += r * r;
    }
    err = std::sqrt(err / elements);
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();

    if (err <= 1.0) {
      const double t_new = last ? t_end : t + h;
      const Matrix ydiff = y_new - y;
      const Matrix bspl = h * k1 - ydiff;
      const Matrix r4 = ydiff - h * k7 - bspl;
      const Matrix r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      while (next < n) {
        const double ts = spec.sample_time(next);
        if (ts > t_new) break;
        Matrix sample;
        if (ts >= t_new) {
          sample = y_new;
        } else {
          const double th = (ts - t) / h, th1 = 1.0 - th;
          sample = y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5)));
        }
        if (!sink(next, ts, as_state(std::move(sample)))) return;
        ++next;
      }
      t = t_new;
      y = y_new;
      k1 = k7;
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (!std::isfinite(h) || h < h_min) {
        throw IntegratorDiverged("rk45 step size underflow at t = " + std::to_string(t));
      }
    }
  }
}

void evolve_until(const QuantumState& initial, const EvolutionSpec& spec, const StopSink& sink) {
  spec.validate();
  if (initial.dim() != spec.hamiltonian.dim()) {
    throw DimensionMismatch("initial state and Hamiltonian dimensions differ");
  }
  const bool closed_pure = initial.is_pure() && spec.dephasing_rate == 0.0;
  switch (spec.integrator) {
    case Integrator::eigenpropagator:
      if (closed_pure) return run_unitary(initial, spec, sink);
      return run_superoperator(initial.density_matrix(), spec, sink);
    case Integrator::rk4:
      return run_rk4(initial.density_matrix(), spec, sink);
    case Integrator::rk45:
      return run_rk45(initial.density_matrix(), spec, sink);
  }
}

}  // namespace

void EvolutionSpec::validate() const {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (!(dt_sample > 0.0)) throw InvalidArgument("dt_sample must be positive");
  if (!(dephasing_rate >= 0.0)) throw InvalidArgument("dephasing rate must be >= 0");
  if (!(rk_tolerance > 0.0) || !(rk_abs_tolerance > 0.0)) throw InvalidArgument("rk tolerances must be positive");
  if (!hamiltonian.hermitian_hint() && !hamiltonian.is_hermitian()) {
    throw NotHermitian("evolution generator is not Hermitian");
  }
}

std::size_t EvolutionSpec::sample_count() const {
  return static_cast<std::size_t>(std::floor(t_max / dt_sample + 1e-9)) + 1;
}

void evolve(const QuantumState& initial, const EvolutionSpec& spec, const SampleSink& sink) {
  evolve_until(initial, spec, [&](std::size_t k, double t, const QuantumState& s) {
    sink(k, t, s);
    return true;
  });
}

Trajectory evolve_unitary(const QuantumState& initial, const EvolutionSpec& spec) {
  if (!initial.is_pure()) throw MixedStateUnsupported("evolve_unitary needs a pure state");
  if (spec.dephasing_rate != 0.0) throw InvalidArgument("evolve_unitary needs W_phi = 0");
  EvolutionSpec closed = spec;
  closed.integrator = Integrator::eigenpropagator;
  Trajectory out;
  out.times.reserve(closed.sample_count());
  out.states.reserve(closed.sample_count());
  evolve(initial, closed, [&](std::size_t, double t, const QuantumState& s) {
    out.times.push_back(t);
    out.states.push_back(s);
  });
  return out;
}

Trajectory evolve_lindblad(const QuantumState& initial, const EvolutionSpec& spec) {
  Trajectory out;
  const QuantumState rho0 = to_density(initial);
  out.times.reserve(spec.sample_count());
  out.states.reserve(spec.sample_count());
  evolve(rho0, spec, [&](std::size_t, double t, const QuantumState& s) {
    out.times.push_back(t);
    out.states.push_back(s);
  });
  return out;
}

Matrix lindblad_rhs(const Matrix& h, double dephasing_rate, const Matrix& rho) {
  const Rhs f{h, dephasing_weights(static_cast<int>(h.rows()), dephasing_rate)};
  return f(rho);
}

Matrix liouvillian(const Operator& h, double dephasing_rate) {
  const int d = h.dim();
  const Matrix& hm = h.matrix();
  const Matrix weights = dephasing_weights(d, dephasing_rate);
  Matrix l = Matrix::Zero(d * d, d * d);
  const Complex minus_i(0.0, -1.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int row = i * d + j;
      for (int k = 0; k < d; ++k) {
        l(row, k * d + j) += minus_i * hm(i, k);   // -i H rho
        l(row, i * d + k) -= minus_i * hm(k, j);   // +i rho H
      }
      l(row, row) += weights(i, j);
    }
  }
  return l;
}

SteadyState steady_state(const QuantumState& initial, const EvolutionSpec& spec) {
  if (!(spec.dephasing_rate > 0.0)) throw InvalidArgument("steady_state needs W_phi > 0");
  constexpr int kWindowSamples = 20;
  const double window = 10.0 / spec.dephasing_rate;
  EvolutionSpec stepped = spec;
  stepped.dt_sample = window / kWindowSamples;
  if (stepped.dt_sample > spec.t_max) stepped.dt_sample = spec.t_max;

  std::deque<Matrix> recent;
  std::optional<double> converged_at;
  Matrix last = initial.density_matrix();
  double t_last = 0.0;
  evolve_until(to_density(initial), stepped, [&](std::size_t, double t, const QuantumState& s) {
    last = s.density_matrix();
    t_last = t;
    recent.push_back(last);
    if (recent.size() > kWindowSamples + 1) recent.pop_front();
    if (recent.size() == kWindowSamples + 1) {
      double worst = 0.0;
      for (const auto& r : recent) worst = std::max(worst, (r - last).norm());
      if (worst < kSteadyStateThreshold) {
        converged_at = t;
        return false;
      }
    }
    return true;
  });

  SteadyState out{as_state(last), converged_at, t_last, 0.0};
  const SpinQuantumNumber spin(last.rows() - 1);
  out.xi_s = squeezing_parameter(out.state, spin).xi_s;
  return out;
}

Matrix liouvillian_null_state(const Operator& h, double dephasing_rate) {
  const int d = h.dim();
  const Matrix l = liouvillian(h, dephasing_rate);
  Matrix system(d * d + 1, d * d);
  system.topRows(d * d) = l;
  system.row(d * d).setZero();
  for (int i = 0; i < d; ++i) system(d * d, i * d + i) = 1.0;
  Vector rhs = Vector::Zero(d * d + 1);
  rhs(d * d) = 1.0;
  const Vector x = system.colPivHouseholderQr().solve(rhs);
  return unvec(x, d);
}

}  // namespace quadspin
