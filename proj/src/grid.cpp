#include "decaylab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "decaylab/parallel.hpp"

namespace decaylab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), box_length_(box_length) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("grid dimension must be 2 or 3, got " +
                                std::to_string(dim));
  if (points_per_axis < 8 || !is_power_of_two(points_per_axis))
    throw std::invalid_argument(
        "points per axis must be a power of two >= 8, got " +
        std::to_string(points_per_axis));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("box length must be positive");
  xi_min_ = 2.0 * std::numbers::pi / box_length;
  cell_measure_ = std::pow(xi_min_, dim);
  size_ = 1;
  for (int i = 0; i < dim; ++i) size_ *= static_cast<std::size_t>(n_);
  auto mags = std::make_shared<std::vector<double>>(size_);
  for (std::size_t f = 0; f < size_; ++f) (*mags)[f] = std::sqrt(wavenumber_sq(f));
  magnitude_ = std::move(mags);
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

std::array<int, 3> Grid::lattice_index(std::size_t flat) const {
  std::array<int, 3> k{0, 0, 0};
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    k[axis] = signed_index(static_cast<int>(flat % n_));
    flat /= n_;
  }
  return k;
}

std::size_t Grid::flat_index(const std::array<int, 3>& k) const {
  std::size_t flat = 0;
  for (int axis = 0; axis < dim_; ++axis) {
    const int p = ((k[axis] % n_) + n_) % n_;
    flat = flat * n_ + static_cast<std::size_t>(p);
  }
  return flat;
}

std::size_t Grid::negated(std::size_t flat) const {
  std::size_t out = 0;
  std::size_t stride = 1;
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    const std::size_t p = flat % n_;
    flat /= n_;
    out += ((n_ - p) % n_) * stride;
    stride *= n_;
  }
  return out;
}

Vec3 Grid::wavevector(std::size_t flat) const {
  const auto k = lattice_index(flat);
  return {xi_min_ * k[0], xi_min_ * k[1], xi_min_ * k[2]};
}

double Grid::wavenumber_sq(std::size_t flat) const {
  const auto xi = wavevector(flat);
  return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
}

Grid make_grid(int dim, int points_per_axis, double box_length) {
  return Grid(dim, points_per_axis, box_length);
}

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  if (components < 1) throw std::invalid_argument("components must be >= 1");
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.size(),
                 cplx{0.0, 0.0});
}

std::span<cplx> SpectralField::component(int c) {
  return std::span<cplx>(coeffs_).subspan(c * grid_.size(), grid_.size());
}

std::span<const cplx> SpectralField::component(int c) const {
  return std::span<const cplx>(coeffs_).subspan(c * grid_.size(),
                                                grid_.size());
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (!(o.grid_ == grid_) || o.components_ != components_)
    throw std::invalid_argument("field shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (!(o.grid_ == grid_) || o.components_ != components_)
    throw std::invalid_argument("field shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    for (std::size_t f = 0; f < grid_.size(); ++f) {
      const double d = std::abs(comp[grid_.negated(f)] - std::conj(comp[f]));
      worst = std::max(worst, d);
    }
  }
  return worst;
}

bool SpectralField::all_finite() const {
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}

SpectralField operator*(double s, SpectralField a) {
  a *= s;
  return a;
}

PhysicalField::PhysicalField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  if (components < 1) throw std::invalid_argument("components must be >= 1");
  values_.assign(static_cast<std::size_t>(components) * grid_.size(), 0.0);
}

std::span<double> PhysicalField::component(int c) {
  return std::span<double>(values_).subspan(c * grid_.size(), grid_.size());
}

std::span<const double> PhysicalField::component(int c) const {
  return std::span<const double>(values_).subspan(c * grid_.size(),
                                                  grid_.size());
}

Vec3 PhysicalField::position(std::size_t flat) const {
  Vec3 x{0.0, 0.0, 0.0};
  const int n = grid_.points();
  for (int axis = grid_.dim() - 1; axis >= 0; --axis) {
    x[axis] = grid_.spacing() * static_cast<double>(flat % n);
    flat /= n;
  }
  return x;
}

double PhysicalField::energy() const {
  std::vector<double> sq(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    sq[i] = values_[i] * values_[i];
  return pairwise_sum(sq) * grid_.cell_volume();
}

}  // namespace decaylab
