#pragma once

#include <cstdint>
#include <string>

#include "decaylab/grid.hpp"

namespace decaylab {

enum class DatumKind { PowerLaw, Gaussian, Annulus, RandomPhasePowerLaw };
enum class CutoffProfile { Sharp, Smooth, Kernel };

std::string to_string(DatumKind k);
DatumKind datum_kind_from_string(const std::string& s);

/// Spectral initial datum.
///
/// PowerLaw / RandomPhasePowerLaw: |u(xi)| = amplitude |xi|^q on |xi| <= cutoff,
/// so r^* = q. Gaussian: amplitude exp(-|xi|^2 width^2 / 2), r^* = 0.
/// Annulus: amplitude on inner <= |xi| <= outer, r^* = infinity.
struct DatumSpec {
  DatumKind kind = DatumKind::PowerLaw;
  double q = 0.0;
  double cutoff = 1.0;
  double width = 1.0;
  double inner = 0.5;
  double outer = 1.0;
  std::uint64_t seed = 1;
  int components = 1;
  double amplitude = 1.0;
  bool mean_zero = true;
  /// Smooth rolls the cutoff off over [cutoff/2, cutoff] with a C-infinity
  /// step. Kernel multiplies by exp(-(|xi|/cutoff)^kernel_exponent) with no
  /// hard edge; with kernel_exponent = 2 alpha and cutoff = kappa^{-1/(2 alpha)}
  /// this is the fractional heat flow of |xi|^q at time 1, whose squared
  /// norms then decay exactly like (1+t)^{-sigma} on R^n. Either way the
  /// spectrum near the origin, and so r^*, is unchanged.
  CutoffProfile profile = CutoffProfile::Sharp;
  double kernel_exponent = 2.0;
  /// Vector data with components == dim: u <- P_T u + w P_L u.
  double longitudinal_weight = 1.0;

  bool operator==(const DatumSpec&) const = default;
};

/// Builds the datum on `grid`. Throws std::invalid_argument when q <= -dim/2
/// (not square integrable), the cutoff exceeds the Nyquist radius, or the
/// annulus is empty.
SpectralField generate(const DatumSpec& spec, const Grid& grid);

/// Leray projection u <- (Id - xi xi^T / |xi|^2) u. Requires components == dim.
SpectralField solenoidal_project(SpectralField field);

/// Max over modes of |xi . u(xi)|.
double max_divergence(const SpectralField& field);

}  // namespace decaylab
