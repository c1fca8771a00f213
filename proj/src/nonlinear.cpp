#include "decaylab/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "decaylab/parallel.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<char> dealias_mask(const Grid& grid) {
  std::vector<char> keep(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) keep[f] = dealias_keeps(grid, f) ? 1 : 0;
  return keep;
}

std::vector<double> axis_wavenumbers(const Grid& grid, int axis) {
  std::vector<double> out(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) out[f] = grid.wavevector(f)[axis];
  return out;
}

// k_axis == -N/2.
bool on_nyquist_plane(const Grid& grid, std::size_t f, int axis) {
  return grid.lattice_index(f)[axis] == -grid.points() / 2;
}

}  // namespace

SpectralField riesz_velocity(const SpectralField& theta) {
  const Grid& grid = theta.grid();
  if (grid.dim() != 2 || theta.components() != 1)
    throw std::invalid_argument("riesz_velocity needs a scalar 2D field");
  SpectralField u(grid, 2);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const double xi_sq = grid.wavenumber_sq(f);
    if (xi_sq == 0.0) continue;
    const Vec3 xi = grid.wavevector(f);
    const double inv = 1.0 / std::sqrt(xi_sq);
    const cplx th = theta.at(0, f);
    u.at(0, f) = on_nyquist_plane(grid, f, 1) ? 0.0 : kI * (xi[1] * inv) * th;
    u.at(1, f) = on_nyquist_plane(grid, f, 0) ? 0.0 : -kI * (xi[0] * inv) * th;
  }
  return u;
}

QGNonlinearity::QGNonlinearity(const Grid& grid)
    : grid_(grid), fft_(grid), keep_(dealias_mask(grid)) {
  if (grid.dim() != 2) throw std::invalid_argument("QG nonlinearity needs a 2D grid");
  xi1_ = axis_wavenumbers(grid, 0);
  xi2_ = axis_wavenumbers(grid, 1);
  inv_mag_.resize(grid.size());
  const auto& mag = grid.magnitudes();
  for (std::size_t f = 0; f < grid.size(); ++f)
    inv_mag_[f] = mag[f] > 0.0 ? 1.0 / mag[f] : 0.0;
  const std::size_t n = grid.size();
  a_.resize(n);
  b_.resize(n);
  theta_x_.resize(n);
  u1_x_.resize(n);
  u2_x_.resize(n);
  prod_.resize(n);
}

void QGNonlinearity::evaluate(const SpectralField& theta, SpectralField& out) {
  if (!(theta.grid() == grid_) || theta.components() != 1 ||
      !(out.grid() == grid_) || out.components() != 1)
    throw std::invalid_argument("QG nonlinearity: shape mismatch");
  const std::size_t n = grid_.size();
  const auto th = theta.component(0);

  // Dealiased theta and its velocity; kept modes never sit on a Nyquist plane.
  for (std::size_t f = 0; f < n; ++f) a_[f] = keep_[f] ? th[f] : 0.0;
  fft_.inverse(a_, theta_x_);
  for (std::size_t f = 0; f < n; ++f) b_[f] = kI * (xi2_[f] * inv_mag_[f]) * a_[f];
  fft_.inverse(b_, u1_x_);
  for (std::size_t f = 0; f < n; ++f) b_[f] = -kI * (xi1_[f] * inv_mag_[f]) * a_[f];
  fft_.inverse(b_, u2_x_);

  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    vmax = std::max(vmax, u1_x_[i] * u1_x_[i] + u2_x_[i] * u2_x_[i]);
  max_velocity_ = std::sqrt(vmax);

  for (std::size_t i = 0; i < n; ++i) prod_[i] = u1_x_[i] * theta_x_[i];
  fft_.forward(prod_, a_);
  for (std::size_t i = 0; i < n; ++i) prod_[i] = u2_x_[i] * theta_x_[i];
  fft_.forward(prod_, b_);

  auto o = out.component(0);
  for (std::size_t f = 0; f < n; ++f)
    o[f] = keep_[f] ? -kI * (xi1_[f] * a_[f] + xi2_[f] * b_[f]) : 0.0;
}

CompressibleNonlinearity::CompressibleNonlinearity(const Grid& grid)
    : grid_(grid), fft_(grid), keep_(dealias_mask(grid)) {
  const int d = grid.dim();
  const std::size_t n = grid.size();
  for (int a = 0; a < d; ++a) xi_.push_back(axis_wavenumbers(grid, a));
  spec_.resize(n);
  u_x_.assign(d, std::vector<double>(n));
  // Products u_i u_j (i <= j) followed by (1/2)(div u) u_i.
  prod_hat_.assign(d * (d + 1) / 2 + d, std::vector<cplx>(n));
  div_x_.resize(n);
  prod_.resize(n);
}

void CompressibleNonlinearity::evaluate(const SpectralField& u, SpectralField& out) {
  const int d = grid_.dim();
  if (!(u.grid() == grid_) || u.components() != d || !(out.grid() == grid_) ||
      out.components() != d)
    throw std::invalid_argument("compressible nonlinearity: shape mismatch");
  const std::size_t n = grid_.size();

  cplx* div_hat = prod_hat_.back().data();  // scratch until the last product
  for (std::size_t f = 0; f < n; ++f) div_hat[f] = 0.0;
  for (int c = 0; c < d; ++c) {
    const auto uc = u.component(c);
    for (std::size_t f = 0; f < n; ++f) {
      spec_[f] = keep_[f] ? uc[f] : 0.0;
      div_hat[f] += kI * xi_[c][f] * spec_[f];
    }
    fft_.inverse(spec_, u_x_[c]);
  }
  for (std::size_t f = 0; f < n; ++f) spec_[f] = div_hat[f];
  fft_.inverse(spec_, div_x_);

  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += u_x_[c][i] * u_x_[c][i];
    vmax = std::max(vmax, s);
  }
  max_velocity_ = std::sqrt(vmax);

  auto pair_index = [d](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * d - i * (i - 1) / 2 + (j - i);
  };
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      for (std::size_t x = 0; x < n; ++x) prod_[x] = u_x_[i][x] * u_x_[j][x];
      fft_.forward(prod_, prod_hat_[pair_index(i, j)]);
    }
  const int base = d * (d + 1) / 2;
  for (int i = 0; i < d; ++i) {
    for (std::size_t x = 0; x < n; ++x) prod_[x] = 0.5 * div_x_[x] * u_x_[i][x];
    fft_.forward(prod_, prod_hat_[base + i]);
  }

  for (int i = 0; i < d; ++i) {
    auto o = out.component(i);
    const auto& half_div_u = prod_hat_[base + i];
    for (std::size_t f = 0; f < n; ++f) {
      if (!keep_[f]) {
        o[f] = 0.0;
        continue;
      }
      cplx flux = 0.0;
      for (int j = 0; j < d; ++j) flux += xi_[j][f] * prod_hat_[pair_index(i, j)][f];
      o[f] = -(kI * flux - half_div_u[f]);
    }
  }
}

SpectralField qg_nonlinear(const SpectralField& theta) {
  QGNonlinearity op(theta.grid());
  SpectralField out(theta.grid(), 1);
  op.evaluate(theta, out);
  return out;
}

SpectralField compressible_nonlinear(const SpectralField& u) {
  CompressibleNonlinearity op(u.grid());
  SpectralField out(u.grid(), u.components());
  op.evaluate(u, out);
  return out;
}

}  // namespace decaylab
