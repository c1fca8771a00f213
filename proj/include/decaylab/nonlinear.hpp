#pragma once

#include <memory>
#include <vector>

#include "decaylab/fft.hpp"
#include "decaylab/grid.hpp"

namespace decaylab {

/// u = R^perp theta = (-R_2 theta, R_1 theta) with R_j = -i xi_j / |xi|, i.e.
///   u_1 = i (xi_2 / |xi|) theta,  u_2 = -i (xi_1 / |xi|) theta.
/// The mean mode maps to 0. On a Nyquist plane (k_j = -N/2) the odd factor
/// xi_j has no real-field meaning, so the component using xi_j is set to 0
/// there.
SpectralField riesz_velocity(const SpectralField& theta);

/// Pseudo-spectral quadratic term N(v) of a semilinear system
/// v_t = M v + N(v). Implementations own their FFT workspace, so one
/// instance serves one thread.
class NonlinearTerm {
 public:
  virtual ~NonlinearTerm() = default;
  virtual int components() const = 0;
  /// Writes N(v) into `out` (same shape as v). Also records max |u| over
  /// the physical grid for the CFL check.
  virtual void evaluate(const SpectralField& v, SpectralField& out) = 0;
  double last_max_velocity() const { return max_velocity_; }

 protected:
  double max_velocity_ = 0.0;
};

/// -u . grad theta for the dissipative quasi-geostrophic equation, evaluated
/// in conservative form -div(u theta) with 2/3 dealiasing of inputs and
/// output.
class QGNonlinearity final : public NonlinearTerm {
 public:
  explicit QGNonlinearity(const Grid& grid);
  int components() const override { return 1; }
  void evaluate(const SpectralField& theta, SpectralField& out) override;

 private:
  Grid grid_;
  FourierTransform fft_;
  std::vector<char> keep_;
  std::vector<double> xi1_, xi2_, inv_mag_;
  std::vector<cplx> a_, b_;
  std::vector<double> theta_x_, u1_x_, u2_x_, prod_;
};

/// -[(u . grad) u + (1/2)(div u) u], assembled as
/// -[div(u (x) u) - (1/2)(div u) u] with 2/3 dealiasing.
class CompressibleNonlinearity final : public NonlinearTerm {
 public:
  explicit CompressibleNonlinearity(const Grid& grid);
  int components() const override { return grid_.dim(); }
  void evaluate(const SpectralField& u, SpectralField& out) override;

 private:
  Grid grid_;
  FourierTransform fft_;
  std::vector<char> keep_;
  std::vector<std::vector<double>> xi_;
  std::vector<cplx> spec_;
  std::vector<std::vector<cplx>> prod_hat_;
  std::vector<std::vector<double>> u_x_;
  std::vector<double> div_x_, prod_;
};

/// Convenience wrappers that build a temporary operator.
SpectralField qg_nonlinear(const SpectralField& theta);
SpectralField compressible_nonlinear(const SpectralField& u);

}  // namespace decaylab
