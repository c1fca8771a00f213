#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "decaylab/grid.hpp"

namespace decaylab {

/// Grid too coarse (or box too small) to resolve enough low-frequency shells.
class InsufficientResolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Low-frequency masses I_s(rho_j) on dyadic radii rho_j = xi_min 2^j up to
/// rho_max = min(1, N xi_min / 8).
struct DecayIndicatorCurve {
  double s = 0.0;
  int dim = 2;
  double xi_min = 0.0;
  std::vector<double> radii;
  std::vector<double> masses;
  /// Nonzero lattice points inside each ball; used as fit weights.
  std::vector<std::size_t> counts;
  /// I_s over the whole lattice (mean excluded).
  double total_mass = 0.0;

  /// Log-log slope between shell j-1 and j; NaN for j = 0 or empty shells.
  double local_slope(std::size_t j) const;
};

enum class CharacterClass { Finite, LowerEndpoint, Infinite };

std::string to_string(CharacterClass c);

/// A decay character value: finite r, the lower endpoint -n/2, or infinity.
struct CharacterValue {
  CharacterClass kind = CharacterClass::Finite;
  double value = 0.0;

  static CharacterValue finite(double r) { return {CharacterClass::Finite, r}; }
  static CharacterValue lower_endpoint(int dim) {
    return {CharacterClass::LowerEndpoint, -0.5 * dim};
  }
  static CharacterValue infinite();
};

/// Estimate of the decay character r_s^* of Lambda^s u_0.
struct DecayCharacterEstimate {
  double s = 0.0;
  /// Estimate of r_s^*; -n/2 + s for LowerEndpoint, +inf for Infinite.
  double r_hat = 0.0;
  /// r_hat - s, the estimate of r^*.
  double r_hat_base = 0.0;
  CharacterClass classification = CharacterClass::Finite;
  double slope = 0.0;
  double slope_stderr = 0.0;
  std::size_t shells_used = 0;
  DecayIndicatorCurve curve;
};

/// Classifier constants.
struct CharacterThresholds {
  /// Fitting starts at this multiple of xi_min.
  double first_shell = 4.0;
  /// A mass below mass_floor * total_mass counts as zero.
  double mass_floor = 1e-14;
  /// Characters above this are reported as Infinite.
  double r_resolvable = 10.0;
  /// slope - 2s below this is the lower endpoint r_s^* = -n/2 + s.
  double endpoint_slope = 0.1;
};

DecayIndicatorCurve indicator_curve(const SpectralField& field, double s);

DecayCharacterEstimate estimate_character(const DecayIndicatorCurve& curve,
                                          int dim,
                                          const CharacterThresholds& th = {});

DecayCharacterEstimate estimate_character(const SpectralField& field, double s);

struct ShiftReport {
  double r_hat_s;
  double r_hat_0;
  double defect;
};

/// The r^* (not r_s^*) carried by an estimate.
CharacterValue base_character(const DecayCharacterEstimate& est);

/// |r_s^* - (s + r^*)| from two independent fits. Both estimates must be
/// Finite.
ShiftReport shift_consistency(const SpectralField& field, double s);

}  // namespace decaylab
