#include "decaylab/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "decaylab/parallel.hpp"

namespace decaylab {

double sobolev_weight(double xi_sq, double s) {
  if (s == 0.0) return 1.0;
  if (s == 1.0) return xi_sq;
  if (s == 2.0) return xi_sq * xi_sq;
  if (xi_sq == 0.0) return 0.0;
  return std::pow(xi_sq, s);
}

namespace {

double weighted_mass(const SpectralField& field, double s, double rho,
                     bool exclude_mean) {
  const Grid& grid = field.grid();
  const auto& mag = grid.magnitudes();
  const std::size_t n = grid.size();
  std::vector<double> terms(n, 0.0);
  const bool bounded = std::isfinite(rho);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      const double r = mag[f];
      if (exclude_mean && f == 0) continue;
      if (bounded && r > rho) continue;
      double acc = 0.0;
      for (int c = 0; c < field.components(); ++c)
        acc += std::norm(field.at(c, f));
      terms[f] = acc * sobolev_weight(r * r, s);
    }
  });
  return pairwise_sum(terms) * grid.cell_measure();
}

}  // namespace

double sobolev_norm_sq(const SpectralField& field, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Sobolev index must be >= 0");
  return weighted_mass(field, s, INFINITY, false);
}

double shell_mass(const SpectralField& field, double s, double rho) {
  if (!(s >= 0.0)) throw std::invalid_argument("Sobolev index must be >= 0");
  if (rho < field.grid().xi_min()) return 0.0;
  return weighted_mass(field, s, rho, true);
}

std::size_t lattice_count(const Grid& grid, double rho) {
  const auto& mag = grid.magnitudes();
  std::size_t count = 0;
  for (std::size_t f = 1; f < mag.size(); ++f)
    if (mag[f] <= rho) ++count;
  return count;
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()) || a.components() != b.components())
    throw std::invalid_argument("inner product: shape mismatch");
  const std::size_t n = a.grid().size();
  std::vector<double> terms(n, 0.0);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      double acc = 0.0;
      for (int c = 0; c < a.components(); ++c)
        acc += (std::conj(a.at(c, f)) * b.at(c, f)).real();
      terms[f] = acc;
    }
  });
  return pairwise_sum(terms) * a.grid().cell_measure();
}

bool dealias_keeps(const Grid& grid, std::size_t flat) {
  const auto k = grid.lattice_index(flat);
  const int n = grid.points();
  for (int axis = 0; axis < grid.dim(); ++axis)
    if (3 * std::abs(k[axis]) > n) return false;
  return true;
}

void dealias_in_place(SpectralField& field) {
  const Grid& grid = field.grid();
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      if (dealias_keeps(grid, f)) continue;
      for (int c = 0; c < field.components(); ++c) field.at(c, f) = 0.0;
    }
  });
}

SpectralField dealias(SpectralField field) {
  dealias_in_place(field);
  return field;
}

}  // namespace decaylab
