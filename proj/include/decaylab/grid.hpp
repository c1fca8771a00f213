#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace decaylab {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Periodic box [0, L)^n sampled with N points per axis.
///
/// Lattice indices k_i run over {-N/2, ..., N/2-1} and are stored in DFT
/// order (0, 1, ..., N/2-1, -N/2, ..., -1) with the last axis varying
/// fastest. The physical wavevector of index k is xi = (2 pi / L) k.
class Grid {
 public:
  /// Throws std::invalid_argument unless dim is 2 or 3, N >= 8 is a power
  /// of two and L > 0.
  Grid(int dim, int points_per_axis, double box_length);

  int dim() const { return dim_; }
  int points() const { return n_; }
  double box_length() const { return box_length_; }
  double xi_min() const { return xi_min_; }
  /// Frequency-space volume element (2 pi / L)^dim.
  double cell_measure() const { return cell_measure_; }
  /// Physical-space volume element (L / N)^dim.
  double cell_volume() const;
  double spacing() const { return box_length_ / n_; }
  /// Largest |xi| reachable along a coordinate axis, pi N / L.
  double nyquist_radius() const { return xi_min_ * (n_ / 2); }

  /// N^dim.
  std::size_t size() const { return size_; }

  /// Signed lattice index along one axis for storage position p in [0, N).
  int signed_index(int p) const { return p < n_ / 2 ? p : p - n_; }
  /// Lattice multi-index of a flat storage index (unused axes are 0).
  std::array<int, 3> lattice_index(std::size_t flat) const;
  std::size_t flat_index(const std::array<int, 3>& k) const;
  /// Flat index of -k (modulo N on each axis).
  std::size_t negated(std::size_t flat) const;
  Vec3 wavevector(std::size_t flat) const;
  double wavenumber_sq(std::size_t flat) const;

  /// |xi| for every mode, in storage order.
  const std::vector<double>& magnitudes() const { return *magnitude_; }

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && n_ == o.n_ && box_length_ == o.box_length_;
  }

 private:
  int dim_;
  int n_;
  double box_length_;
  double xi_min_;
  double cell_measure_;
  std::size_t size_;
  // Shared so copies of a Grid stay cheap.
  std::shared_ptr<const std::vector<double>> magnitude_;
};

/// Convenience factory matching the CLI vocabulary.
Grid make_grid(int dim, int points_per_axis, double box_length);

/// Fourier coefficients of a real m-component field, component-major.
///
/// Coefficients approximate the unitary continuum transform
/// (2 pi)^{-n/2} \int u(x) e^{-i xi.x} dx, so sums weighted by
/// Grid::cell_measure() approximate frequency integrals and Plancherel holds
/// without extra factors.
class SpectralField {
 public:
  SpectralField(Grid grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_.size(); }

  std::span<cplx> component(int c);
  std::span<const cplx> component(int c) const;
  std::span<cplx> data() { return coeffs_; }
  std::span<const cplx> data() const { return coeffs_; }

  cplx& at(int c, std::size_t flat) { return coeffs_[c * grid_.size() + flat]; }
  const cplx& at(int c, std::size_t flat) const {
    return coeffs_[c * grid_.size() + flat];
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  /// max_k |c(-k) - conj(c(k))| over all components.
  double hermitian_defect() const;
  bool all_finite() const;

 private:
  Grid grid_;
  int components_;
  std::vector<cplx> coeffs_;
};

SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Real samples of an m-component field on the physical grid.
class PhysicalField {
 public:
  PhysicalField(Grid grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;
  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  /// Physical coordinate of a flat grid index.
  Vec3 position(std::size_t flat) const;
  /// Quadrature of |u|^2 over the box.
  double energy() const;

 private:
  Grid grid_;
  int components_;
  std::vector<double> values_;
};

}  // namespace decaylab
