#pragma once

#include <map>
#include <string>
#include <vector>

#include "decaylab/decay_character.hpp"
#include "decaylab/grid.hpp"
#include "decaylab/symbols.hpp"

namespace decaylab {

/// Squared norms ||Lambda^s v(t)||^2 sampled at ascending times.
struct NormTimeSeries {
  std::vector<double> times;
  std::vector<double> s_values;
  /// values[i][j] is the squared norm at times[i] for s_values[j].
  std::vector<std::vector<double>> values;
  std::string model;
  std::map<std::string, std::string> metadata;

  /// Column for one s value; throws if s was not sampled.
  std::vector<double> column(double s) const;
  std::size_t s_index(double s) const;
};

/// Exact per-mode evolution v(xi, t) = e^{t M(xi)} v0(xi).
SpectralField evolve_linear(const SpectralField& v0, const DissipativeSymbol& sym,
                            double t);

NormTimeSeries linear_norm_series(const SpectralField& v0,
                                  const DissipativeSymbol& sym,
                                  const std::vector<double>& times,
                                  const std::vector<double>& s_values);

/// Geometric sample schedule t_j = t0 g^j, j = 0.. while t_j <= t_end.
std::vector<double> geometric_times(double t0, double growth, double t_end);

enum class LinearRateKind { TwoSided, SlowerThanAlgebraic, FasterThanAlgebraic };

struct LinearPrediction {
  LinearRateKind kind;
  /// (1/alpha)(n/2 + r^* + s) for TwoSided; NaN otherwise.
  double sigma;
};

LinearPrediction predicted_linear_exponent(int dim, double alpha,
                                           const CharacterValue& r_star, double s);

/// Largest violation, over consecutive samples, of
///   (E(t_{j+1}) - E(t_j)) / (t_{j+1} - t_j) <= -2 c sum |xi|^{2 alpha} |v(t_{j+1})|^2,
/// divided by E(t_j); c is the symbol's smallest rate constant. E(t) is
/// convex along the exact semigroup, so the inequality holds with room.
double dissipation_inequality_defect(const SpectralField& v0,
                                     const DissipativeSymbol& sym,
                                     const std::vector<double>& times);

}  // namespace decaylab
