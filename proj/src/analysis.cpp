#include "quadspin/analysis.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <mutex>

#include <fftw3.h>

#include "quadspin/errors.hpp"

namespace quadspin {

namespace {
// FFTW planning is not thread safe; execution is.
std::mutex fftw_planner_mutex;
}  // namespace

std::vector<double> analytic_envelope(const std::vector<double>& signal) {
  const std::size_t n = signal.size();
  if (n == 0) return {};
  double mean = 0.0;
  for (double v : signal) mean += v;
  mean /= static_cast<double>(n);

  std::vector<std::complex<double>> buf(n);
  for (std::size_t k = 0; k < n; ++k) buf[k] = signal[k] - mean;
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  const int len = static_cast<int>(n);
  fftw_plan forward, backward;
  {
    std::lock_guard lock(fftw_planner_mutex);
    forward = fftw_plan_dft_1d(len, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(len, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(forward);
  // One-sided spectrum: keep DC (and Nyquist), double positive frequencies.
  for (std::size_t k = 1; k < n; ++k) {
    if (2 * k < n) buf[k] *= 2.0;
    else if (2 * k > n) buf[k] = 0.0;
  }
  fftw_execute(backward);
  {
    std::lock_guard lock(fftw_planner_mutex);
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  std::vector<double> env(n);
  for (std::size_t k = 0; k < n; ++k) env[k] = std::abs(buf[k]) / static_cast<double>(n);
  return env;
}

double fraction_above(const std::vector<SqueezingRecord>& series, double threshold) {
  std::size_t defined = 0, above = 0;
  for (const auto& r : series) {
    if (!r.mean_spin_defined) continue;
    ++defined;
    if (r.xi_s > threshold) ++above;
  }
  return defined == 0 ? std::numeric_limits<double>::quiet_NaN()
                      : static_cast<double>(above) / static_cast<double>(defined);
}

std::optional<SqueezingRecord> last_defined(const std::vector<SqueezingRecord>& series) {
  for (auto it = series.rbegin(); it != series.rend(); ++it)
    if (it->mean_spin_defined) return *it;
  return std::nullopt;
}

std::vector<double> xi_values(const std::vector<SqueezingRecord>& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& r : series) out.push_back(r.xi_s);
  return out;
}

ClosedEvolution::ClosedEvolution(const Operator& h, const QuantumState& initial)
    : eig_(hermitian_eig(h)) {
  if (initial.dim() != h.dim()) throw DimensionMismatch("ClosedEvolution: dimension");
  coeffs_ = eig_.eigenvectors.adjoint() * initial.amplitudes();
}

QuantumState ClosedEvolution::at(double t) const {
  Vector phased(coeffs_.size());
  for (Eigen::Index k = 0; k < coeffs_.size(); ++k)
    phased(k) = std::polar(1.0, -eig_.eigenvalues(k) * t) * coeffs_(k);
  return QuantumState::pure(eig_.eigenvectors * phased, Validation::skip);
}

double ClosedEvolution::xi_s(double t) const {
  const auto rec = squeezing_parameter(at(t), spin(), t);
  return rec.mean_spin_defined ? rec.xi_s : std::numeric_limits<double>::infinity();
}

Extremum golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  const double ft = f(t);
  if (ft <= fc && ft <= fd) return {t, ft};
  return fc < fd ? Extremum{c, fc} : Extremum{d, fd};
}

Extremum refined_xi_minimum(const ClosedEvolution& evolution, double t_max, double dt) {
  const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  Extremum best{0.0, std::numeric_limits<double>::infinity()};
  std::size_t best_k = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double v = evolution.xi_s(k * dt);
    if (v < best.value) best = {k * dt, v}, best_k = k;
  }
  const double a = best_k == 0 ? 0.0 : (best_k - 1) * dt;
  const double b = std::min(t_max, (best_k + 1) * dt);
  const auto refined = golden_section_min([&](double t) { return evolution.xi_s(t); }, a, b);
  return refined.value < best.value ? refined : best;
}

std::optional<Extremum> first_revival(const ClosedEvolution& evolution, double t_max, double dt, double dip,
                                      double level) {
  const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  auto xi = [&](double t) {
    const double v = evolution.xi_s(t);
    return std::isinf(v) ? 0.0 : v;  // an undefined mean spin counts as "not revived"
  };
  bool dipped = false;
  double prev2 = xi(0.0), prev = xi(dt);
  for (std::size_t k = 2; k <= n; ++k) {
    const double cur = xi(k * dt);
    if (prev < dip) dipped = true;
    if (dipped && prev >= level && prev >= prev2 && prev >= cur) {
      const double a = (k - 2) * dt, b = k * dt;
      const auto peak = golden_section_min([&](double t) { return -xi(t); }, a, b);
      return Extremum{peak.t, -peak.value};
    }
    prev2 = prev;
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace quadspin
