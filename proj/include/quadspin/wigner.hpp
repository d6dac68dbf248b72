#pragma once

// Spin Wigner distribution on the sphere from the multipole expansion
//
//   W(theta, phi) = sqrt((2I+1)/4pi) Re sum_{k,q} rho_kq Y_kq(theta, phi),
//   rho_kq = Tr(rho T_kq^dagger),
//
// normalized so that the surface integral of W is 1.

#include <iosfwd>
#include <memory>
#include <vector>

#include "quadspin/parallel.hpp"
#include "quadspin/spin_algebra.hpp"
#include "quadspin/states.hpp"

namespace quadspin {

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>, arguments doubled
/// (two_j1 = 2 j1, ...). Exact rational Racah sum, rounded once at the end.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Theta uniform on [0, pi], phi uniform on [0, 2 pi).
class SphereGrid {
 public:
  SphereGrid(int n_theta = 91, int n_phi = 180);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }
  double theta(int i) const;
  double phi(int j) const;
  /// Quadrature weight of node (i, j) for the measure sin(theta) dtheta dphi.
  /// Theta weights are Clenshaw-Curtis in cos(theta); phi is the periodic
  /// trapezoid rule. Sums to 4 pi.
  double weight(int i, [[maybe_unused]] int j) const { return theta_weights_[i] * dphi_; }
  double weight_sum() const;
  /// Index of the nearest lattice node to (theta, phi).
  std::pair<int, int> nearest(double theta, double phi) const;

 private:
  int n_theta_;
  int n_phi_;
  double dphi_;
  std::vector<double> theta_weights_;
};

struct WignerField {
  SphereGrid grid;
  /// Row-major theta then phi, sr^-1.
  std::vector<double> values;
  /// Largest imaginary part met while summing; zero for exact arithmetic.
  double max_imag = 0.0;
  int two_i = 1;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n_phi() + j]; }
  double integral() const;
  /// Grid node holding the global maximum (first one in row-major order on ties).
  std::pair<int, int> argmax() const;
};

/// T_kq for k = 0..2I and q = -k..k, stored at index k*k + (q + k).
struct SphericalTensorBasis {
  int two_i = 1;
  std::vector<Operator> tensors;

  int max_rank() const { return two_i; }
  const Operator& at(int k, int q) const { return tensors[static_cast<std::size_t>(k * k + q + k)]; }
};

/// Memoized per spin; safe to call concurrently.
std::shared_ptr<const SphericalTensorBasis> spherical_tensor_basis(SpinQuantumNumber spin);

/// Multipole coefficients rho_kq in the same layout as the basis.
std::vector<Complex> multipole_coefficients(const QuantumState& state, const SphericalTensorBasis& basis);

/// Parallel over theta rows; output independent of the worker count.
WignerField wigner_distribution(const QuantumState& state, const SphereGrid& grid = SphereGrid{},
                                Parallelism parallelism = {});
/// Serial reference: evaluates every node independently with no row caching.
WignerField wigner_distribution_serial(const QuantumState& state, const SphereGrid& grid = SphereGrid{});

/// CSV `theta,phi,w`, row-major theta then phi.
void write_wigner_csv(std::ostream& out, const WignerField& field);
/// JSON metadata sidecar (spin, grid shape, normalization convention, tau).
void write_wigner_metadata(std::ostream& out, const WignerField& field, double tau);

}  // namespace quadspin
