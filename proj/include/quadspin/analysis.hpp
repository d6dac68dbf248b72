#pragma once

// Post-processing of squeezing time series: analytic-signal envelope,
// continuous refinement of extrema on a closed evolution, revival times.

#include <functional>
#include <optional>
#include <vector>

#include "quadspin/metrics.hpp"
#include "quadspin/spin_algebra.hpp"
#include "quadspin/states.hpp"

namespace quadspin {

/// |x_a + i Hilbert(x_a)| with x_a = x - mean(x); FFT-based, periodic extension.
std::vector<double> analytic_envelope(const std::vector<double>& signal);

/// Fraction of defined samples with xi_S > threshold.
double fraction_above(const std::vector<SqueezingRecord>& series, double threshold);

/// Last record whose mean spin is defined (the terminal xi_S of a run that
/// relaxes to the maximally mixed state); empty if there is none.
std::optional<SqueezingRecord> last_defined(const std::vector<SqueezingRecord>& series);

/// xi_S values of a series, NaN where the mean spin is undefined.
std::vector<double> xi_values(const std::vector<SqueezingRecord>& series);

/// Pure-state evolution exp(-iHt) psi0 evaluated at arbitrary t.
class ClosedEvolution {
 public:
  ClosedEvolution(const Operator& h, const QuantumState& initial);
  QuantumState at(double t) const;
  SpinQuantumNumber spin() const { return SpinQuantumNumber(static_cast<int>(coeffs_.size()) - 1); }
  /// xi_S(t); +inf when the mean spin is undefined.
  double xi_s(double t) const;

 private:
  EigenDecomposition eig_;
  Vector coeffs_;
};

struct Extremum {
  double t;
  double value;
};

/// Golden-section minimization of f on [a, b] down to interval width tol.
Extremum golden_section_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Smallest xi_S of a closed evolution over [0, t_max]: the sampled minimum
/// is bracketed by its neighbours and refined by golden section.
Extremum refined_xi_minimum(const ClosedEvolution& evolution, double t_max, double dt);

/// First time t > 0 where xi_S comes back up to 1 after dipping below
/// `dip` (sampled detection, then golden-section refinement of the local
/// maximum). Empty when no revival is found before t_max.
std::optional<Extremum> first_revival(const ClosedEvolution& evolution, double t_max, double dt,
                                      double dip = 0.5, double level = 1.0 - 1e-3);

}  // namespace quadspin
