#include "decaylab/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "decaylab/parallel.hpp"
#include "decaylab/random.hpp"

namespace decaylab {

namespace {

// C-infinity step: 1 for x <= 0, 0 for x >= 1.
double smooth_step_down(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  const auto f = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  return f(1.0 - x) / (f(1.0 - x) + f(x));
}

double cutoff_factor(const DatumSpec& spec, double r) {
  if (spec.profile == CutoffProfile::Kernel)
    return std::exp(-std::pow(r / spec.cutoff, spec.kernel_exponent));
  if (r > spec.cutoff) return 0.0;
  if (spec.profile == CutoffProfile::Sharp) return 1.0;
  return smooth_step_down(2.0 * r / spec.cutoff - 1.0);
}

double magnitude(const DatumSpec& spec, double r) {
  switch (spec.kind) {
    case DatumKind::PowerLaw:
    case DatumKind::RandomPhasePowerLaw:
      if (r == 0.0) return spec.q == 0.0 ? spec.amplitude : 0.0;
      return spec.amplitude * std::pow(r, spec.q) * cutoff_factor(spec, r);
    case DatumKind::Gaussian:
      return spec.amplitude * std::exp(-0.5 * r * r * spec.width * spec.width);
    case DatumKind::Annulus:
      return (r >= spec.inner && r <= spec.outer) ? spec.amplitude : 0.0;
  }
  return 0.0;
}

void validate(const DatumSpec& spec, const Grid& grid) {
  if (spec.components < 1 || spec.components > 3)
    throw std::invalid_argument("datum components must be in 1..3");
  const bool power = spec.kind == DatumKind::PowerLaw ||
                     spec.kind == DatumKind::RandomPhasePowerLaw;
  if (power) {
    if (!(spec.q > -0.5 * grid.dim()))
      throw std::invalid_argument("power-law exponent q must exceed -dim/2 "
                                  "(datum not square integrable)");
    if (!(spec.cutoff > 0.0)) throw std::invalid_argument("cutoff must be > 0");
    if (spec.cutoff > grid.nyquist_radius() * (1.0 + 1e-12))
      throw std::invalid_argument("cutoff exceeds the grid's Nyquist radius");
    if (spec.profile == CutoffProfile::Kernel && !(spec.kernel_exponent > 0.0))
      throw std::invalid_argument("kernel_exponent must be > 0");
  }
  if (spec.kind == DatumKind::Annulus &&
      !(spec.inner >= 0.0 && spec.outer > spec.inner))
    throw std::invalid_argument("annulus needs 0 <= inner < outer");
  if (spec.kind == DatumKind::Gaussian && !(spec.width > 0.0))
    throw std::invalid_argument("gaussian width must be > 0");
  if (spec.longitudinal_weight != 1.0 && spec.components != grid.dim())
    throw std::invalid_argument("longitudinal weight needs a dim-component field");
}

}  // namespace

std::string to_string(DatumKind k) {
  switch (k) {
    case DatumKind::PowerLaw: return "power_law";
    case DatumKind::Gaussian: return "gaussian";
    case DatumKind::Annulus: return "annulus";
    case DatumKind::RandomPhasePowerLaw: return "random_phase_power_law";
  }
  return "unknown";
}

DatumKind datum_kind_from_string(const std::string& s) {
  if (s == "power_law") return DatumKind::PowerLaw;
  if (s == "gaussian") return DatumKind::Gaussian;
  if (s == "annulus") return DatumKind::Annulus;
  if (s == "random_phase_power_law") return DatumKind::RandomPhasePowerLaw;
  throw std::invalid_argument("unknown datum kind '" + s + "'");
}

SpectralField generate(const DatumSpec& spec, const Grid& grid) {
  validate(spec, grid);
  SpectralField field(grid, spec.components);
  const auto& mag = grid.magnitudes();
  const bool random = spec.kind == DatumKind::RandomPhasePowerLaw;
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      const double a = magnitude(spec, mag[f]);
      if (a == 0.0) continue;
      for (int c = 0; c < spec.components; ++c) {
        cplx value = a;
        if (random) {
          // Phase lives on the lower of the pair (k, -k) and is mirrored.
          const std::size_t g = grid.negated(f);
          if (g != f) {
            const std::size_t rep = std::min(f, g);
            const double phase = 2.0 * std::numbers::pi *
                                 hashed_uniform(spec.seed + 7919u * c, rep);
            value = std::polar(a, f == rep ? phase : -phase);
          }
        }
        field.at(c, f) = value;
      }
    }
  });
  if (spec.mean_zero)
    for (int c = 0; c < spec.components; ++c) field.at(c, 0) = 0.0;
  if (spec.longitudinal_weight != 1.0) {
    const SpectralField transverse = solenoidal_project(field);
    SpectralField longitudinal = field;
    longitudinal -= transverse;
    longitudinal *= spec.longitudinal_weight;
    field = transverse;
    field += longitudinal;
  }
  return field;
}

SpectralField solenoidal_project(SpectralField field) {
  const Grid& grid = field.grid();
  if (field.components() != grid.dim())
    throw std::invalid_argument("solenoidal projection needs a vector field");
  const int dim = grid.dim();
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      const double xi_sq = grid.wavenumber_sq(f);
      if (xi_sq == 0.0) continue;
      const Vec3 xi = grid.wavevector(f);
      cplx dot = 0.0;
      for (int c = 0; c < dim; ++c) dot += xi[c] * field.at(c, f);
      const cplx coef = dot / xi_sq;
      for (int c = 0; c < dim; ++c) field.at(c, f) -= coef * xi[c];
    }
  });
  return field;
}

double max_divergence(const SpectralField& field) {
  const Grid& grid = field.grid();
  double worst = 0.0;
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Vec3 xi = grid.wavevector(f);
    cplx dot = 0.0;
    for (int c = 0; c < std::min(field.components(), grid.dim()); ++c)
      dot += xi[c] * field.at(c, f);
    worst = std::max(worst, std::abs(dot));
  }
  return worst;
}

}  // namespace decaylab
