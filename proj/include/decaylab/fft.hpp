#pragma once

#include <memory>
#include <span>

#include "decaylab/grid.hpp"

namespace decaylab {

/// FFTW-backed transforms between PhysicalField samples and SpectralField
/// coefficients for one grid.
///
/// Forward: c_k = (dx / sqrt(2 pi))^n sum_x u(x) e^{-i xi_k . x}
/// Inverse: u(x) = (sqrt(2 pi) / L)^n sum_k c_k e^{+i xi_k . x}
///
/// Plans use FFTW_ESTIMATE so the algorithm, and therefore the rounding, is
/// the same on every run. One instance must not be used from two threads at
/// once; create one per worker.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  const Grid& grid() const;

  SpectralField forward(const PhysicalField& field);
  PhysicalField inverse(const SpectralField& field);

  void forward(std::span<const double> values, std::span<cplx> coeffs);
  /// Writes the real part; returns max |imaginary part| of the result.
  double inverse(std::span<const cplx> coeffs, std::span<double> values);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralField fourier_transform(const PhysicalField& field);
PhysicalField inverse_fourier_transform(const SpectralField& field);

}  // namespace decaylab
