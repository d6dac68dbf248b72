#include "quadspin/wigner.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <shared_mutex>

#include <json.hpp>

#include "quadspin/bloch.hpp"
#include "quadspin/errors.hpp"
#include "quadspin/format.hpp"

namespace quadspin {

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 2) throw InvalidArgument("SphereGrid: n_theta must be >= 2");
  if (n_phi < 4) throw InvalidArgument("SphereGrid: n_phi must be >= 4");
  dphi_ = kTwoPi / n_phi;

  // Clenshaw-Curtis on x = cos(theta) with nodes at the Chebyshev extrema.
  const int n = n_theta - 1;
  theta_weights_.assign(static_cast<std::size_t>(n_theta), 0.0);
  for (int k = 0; k <= n; ++k) {
    const double t = kPi * k / n;
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double b = (2 * j == n) ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * t);
    }
    const double c = (k == 0 || k == n) ? 1.0 : 2.0;
    theta_weights_[static_cast<std::size_t>(k)] = c / n * (1.0 - s);
  }
}

double SphereGrid::theta(int i) const { return kPi * i / (n_theta_ - 1); }
double SphereGrid::phi(int j) const { return dphi_ * j; }

double SphereGrid::weight_sum() const {
  double s = 0.0;
  for (double w : theta_weights_) s += w;
  return s * dphi_ * n_phi_;
}

std::pair<int, int> SphereGrid::nearest(double theta, double phi) const {
  const double dtheta = kPi / (n_theta_ - 1);
  int i = static_cast<int>(std::lround(theta / dtheta));
  i = std::clamp(i, 0, n_theta_ - 1);
  double p = std::fmod(phi, kTwoPi);
  if (p < 0) p += kTwoPi;
  int j = static_cast<int>(std::lround(p / dphi_)) % n_phi_;
  return {i, j};
}

double WignerField::integral() const {
  double s = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i)
    for (int j = 0; j < grid.n_phi(); ++j) s += grid.weight(i, j) * at(i, j);
  return s;
}

std::pair<int, int> WignerField::argmax() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k)
    if (values[k] > values[best]) best = k;
  return {static_cast<int>(best / grid.n_phi()), static_cast<int>(best % grid.n_phi())};
}

namespace {

SphericalTensorBasis build_basis(SpinQuantumNumber spin) {
  const int two_i = spin.two_i();
  const int d = spin.dim();
  SphericalTensorBasis basis;
  basis.two_i = two_i;
  for (int k = 0; k <= two_i; ++k) {
    const double norm = std::sqrt((2.0 * k + 1.0) / d);
    for (int q = -k; q <= k; ++q) {
      Matrix t = Matrix::Zero(d, d);
      for (int row = 0; row < d; ++row) {
        const int two_m = two_i - 2 * row;
        for (int col = 0; col < d; ++col) {
          const int two_mp = two_i - 2 * col;
          if (two_mp + 2 * q != two_m) continue;
          t(row, col) = norm * clebsch_gordan(two_i, two_mp, 2 * k, 2 * q, two_i, two_m);
        }
      }
      basis.tensors.emplace_back(std::move(t));
    }
  }
  return basis;
}

double prefactor(int two_i) { return std::sqrt((two_i + 1.0) / (4.0 * kPi)); }

Complex harmonic(int k, int q, double theta, double phi) {
  const int aq = std::abs(q);
  double p = std::sph_legendre(static_cast<unsigned>(k), static_cast<unsigned>(aq), theta);
  if (q < 0 && (aq & 1)) p = -p;
  return p * std::polar(1.0, q * phi);
}

}  // namespace

std::shared_ptr<const SphericalTensorBasis> spherical_tensor_basis(SpinQuantumNumber spin) {
  static std::shared_mutex mutex;
  static std::map<int, std::shared_ptr<const SphericalTensorBasis>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(spin.two_i());
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const SphericalTensorBasis>(build_basis(spin));
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(spin.two_i(), std::move(built));
  return it->second;
}

std::vector<Complex> multipole_coefficients(const QuantumState& state, const SphericalTensorBasis& basis) {
  if (state.dim() != basis.two_i + 1) throw DimensionMismatch("multipole_coefficients: dimension");
  const Matrix rho = state.density_matrix();
  std::vector<Complex> out;
  out.reserve(basis.tensors.size());
  for (const auto& t : basis.tensors) out.push_back(rho.cwiseProduct(t.matrix().conjugate()).sum());
  return out;
}

WignerField wigner_distribution(const QuantumState& state, const SphereGrid& grid, Parallelism parallelism) {
  const int two_i = state.dim() - 1;
  const auto basis = spherical_tensor_basis(SpinQuantumNumber(two_i));
  const auto rho_kq = multipole_coefficients(state, *basis);
  const double pref = prefactor(two_i);

  WignerField field{grid, std::vector<double>(grid.size()), 0.0, two_i};
  std::vector<double> row_imag(static_cast<std::size_t>(grid.n_theta()), 0.0);
  parallel_for(static_cast<std::size_t>(grid.n_theta()), parallelism, [&](std::size_t i) {
    const double theta = grid.theta(static_cast<int>(i));
    // Associated Legendre part of Y_kq, q >= 0, cached for the row.
    std::vector<double> legendre(static_cast<std::size_t>((two_i + 1) * (two_i + 1)));
    for (int k = 0; k <= two_i; ++k)
      for (int q = 0; q <= k; ++q)
        legendre[static_cast<std::size_t>(k * k + q + k)] =
            std::sph_legendre(static_cast<unsigned>(k), static_cast<unsigned>(q), theta);

    for (int j = 0; j < grid.n_phi(); ++j) {
      const double phi = grid.phi(j);
      Complex sum = 0.0;
      for (int k = 0; k <= two_i; ++k) {
        for (int q = -k; q <= k; ++q) {
          double p = legendre[static_cast<std::size_t>(k * k + std::abs(q) + k)];
          if (q < 0 && (q & 1)) p = -p;
          sum += rho_kq[static_cast<std::size_t>(k * k + q + k)] * p * std::polar(1.0, q * phi);
        }
      }
      field.values[i * grid.n_phi() + j] = pref * sum.real();
      row_imag[i] = std::max(row_imag[i], pref * std::abs(sum.imag()));
    }
  });
  for (double v : row_imag) field.max_imag = std::max(field.max_imag, v);
  return field;
}

WignerField wigner_distribution_serial(const QuantumState& state, const SphereGrid& grid) {
  const int two_i = state.dim() - 1;
  const auto basis = spherical_tensor_basis(SpinQuantumNumber(two_i));
  const Matrix rho = state.density_matrix();
  const double pref = prefactor(two_i);
  const int d = state.dim();

  WignerField field{grid, {}, 0.0, two_i};
  field.values.reserve(grid.size());
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      // Kernel Delta(theta, phi) = sum_kq Y_kq T_kq^dagger, then W = Tr(rho Delta).
      Matrix kernel = Matrix::Zero(d, d);
      for (int k = 0; k <= two_i; ++k)
        for (int q = -k; q <= k; ++q)
          kernel += harmonic(k, q, grid.theta(i), grid.phi(j)) * basis->at(k, q).matrix().adjoint();
      const Complex w = pref * (rho * kernel).trace();
      field.values.push_back(w.real());
      field.max_imag = std::max(field.max_imag, std::abs(w.imag()));
    }
  }
  return field;
}

void write_wigner_csv(std::ostream& out, const WignerField& field) {
  out << "theta,phi,w\n";
  for (int i = 0; i < field.grid.n_theta(); ++i) {
    const std::string theta = format_double(field.grid.theta(i));
    for (int j = 0; j < field.grid.n_phi(); ++j) {
      out << theta << ',' << format_double(field.grid.phi(j)) << ',' << format_double(field.at(i, j)) << '\n';
    }
  }
}

void write_wigner_metadata(std::ostream& out, const WignerField& field, double tau) {
  nlohmann::ordered_json meta;
  meta["spin_two_i"] = field.two_i;
  meta["tau"] = tau;
  meta["n_theta"] = field.grid.n_theta();
  meta["n_phi"] = field.grid.n_phi();
  meta["layout"] = "row-major theta then phi; theta uniform on [0, pi], phi uniform on [0, 2 pi)";
  meta["normalization"] = "surface integral of w over the unit sphere equals 1 (sr^-1)";
  meta["construction"] = "multipole expansion W = sqrt((2I+1)/4pi) sum_kq Tr(rho T_kq^dagger) Y_kq";
  meta["quadrature"] = "Clenshaw-Curtis in cos(theta), periodic trapezoid in phi";
  meta["integral"] = field.integral();
  meta["max_imag"] = field.max_imag;
  out << meta.dump(2) << '\n';
}

}  // namespace quadspin
