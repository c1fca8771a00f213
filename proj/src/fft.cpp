#include "decaylab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace decaylab {

namespace {
// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FourierTransform::Impl {
  Grid grid;
  fftw_complex* buffer = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  double forward_scale = 1.0;
  double inverse_scale = 1.0;

  explicit Impl(const Grid& g) : grid(g) {
    const int dim = grid.dim();
    int dims[3] = {grid.points(), grid.points(), grid.points()};
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(grid.size());
    fwd = fftw_plan_dft(dim, dims, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft(dim, dims, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!buffer || !fwd || !bwd) throw std::runtime_error("FFTW planning failed");
    const double root2pi = std::sqrt(2.0 * std::numbers::pi);
    forward_scale = std::pow(grid.spacing() / root2pi, dim);
    inverse_scale = std::pow(root2pi / grid.box_length(), dim);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buffer) fftw_free(buffer);
  }
};

FourierTransform::FourierTransform(const Grid& grid)
    : impl_(std::make_unique<Impl>(grid)) {}
FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept =
    default;

const Grid& FourierTransform::grid() const { return impl_->grid; }

void FourierTransform::forward(std::span<const double> values,
                               std::span<cplx> coeffs) {
  const std::size_t n = impl_->grid.size();
  if (values.size() != n || coeffs.size() != n)
    throw std::invalid_argument("forward transform: shape does not match grid");
  auto* buf = impl_->buffer;
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = values[i];
    buf[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  const double s = impl_->forward_scale;
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = cplx{buf[i][0] * s, buf[i][1] * s};
}

double FourierTransform::inverse(std::span<const cplx> coeffs,
                                 std::span<double> values) {
  const std::size_t n = impl_->grid.size();
  if (values.size() != n || coeffs.size() != n)
    throw std::invalid_argument("inverse transform: shape does not match grid");
  auto* buf = impl_->buffer;
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = coeffs[i].real();
    buf[i][1] = coeffs[i].imag();
  }
  fftw_execute(impl_->bwd);
  const double s = impl_->inverse_scale;
  double max_imag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = buf[i][0] * s;
    max_imag = std::max(max_imag, std::abs(buf[i][1] * s));
  }
  return max_imag;
}

SpectralField FourierTransform::forward(const PhysicalField& field) {
  if (!(field.grid() == impl_->grid))
    throw std::invalid_argument("forward transform: grid mismatch");
  SpectralField out(field.grid(), field.components());
  for (int c = 0; c < field.components(); ++c)
    forward(field.component(c), out.component(c));
  return out;
}

PhysicalField FourierTransform::inverse(const SpectralField& field) {
  if (!(field.grid() == impl_->grid))
    throw std::invalid_argument("inverse transform: grid mismatch");
  PhysicalField out(field.grid(), field.components());
  for (int c = 0; c < field.components(); ++c)
    inverse(field.component(c), out.component(c));
  return out;
}

SpectralField fourier_transform(const PhysicalField& field) {
  FourierTransform ft(field.grid());
  return ft.forward(field);
}

PhysicalField inverse_fourier_transform(const SpectralField& field) {
  FourierTransform ft(field.grid());
  return ft.inverse(field);
}

}  // namespace decaylab
