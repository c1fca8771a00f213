#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "decaylab/decay_character.hpp"
#include "decaylab/grid.hpp"
#include "decaylab/linear_evolution.hpp"

namespace decaylab {

/// ||.||^2 ~ prefactor (1+t)^{-exponent} over a time window.
struct RateFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  /// RMS of the log residuals.
  double residual = 0.0;
  int n_points = 0;
};

/// Thrown when the data in a window is not a power law (residual > 0.5),
/// or the window has too few points.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least squares of log y against log(1+t) over samples with t in window.
RateFit fit_power_law(const NormTimeSeries& series, double s,
                      std::pair<double, double> window);
RateFit fit_power_law(const std::vector<double>& times,
                      const std::vector<double>& values,
                      std::pair<double, double> window);

/// Fit window for a difference series w = v - linear part. w starts at zero
/// and grows before it decays, so the window opens at the later of
/// window.first and the time of the largest sample inside the window.
std::pair<double, double> difference_fit_window(const std::vector<double>& times,
                                                const std::vector<double>& values,
                                                std::pair<double, double> window);

enum class BoundModel { Linear, QG_L2, QG_Hs, QG_Difference, Comp_L2, Comp_Hs, Comp_Difference };

std::string to_string(BoundModel m);
BoundModel bound_model_from_string(const std::string& s);

/// Exponents of ||.||^2 <= C(1+t)^{-upper} and ||.||^2 >= C(1+t)^{-lower}.
/// lower == upper is the sharp case; lower > upper is labelled "gap".
struct BoundPrediction {
  BoundModel model = BoundModel::Linear;
  std::optional<double> upper;
  std::optional<double> lower;
  std::string regime;
};

/// Parameters outside a result's hypotheses throw std::invalid_argument
/// naming the hypothesis. dim is used by the Linear model only; the
/// compressible models are three dimensional with alpha = 1.
BoundPrediction predict_bounds(BoundModel model, double alpha,
                               const CharacterValue& r_star, double s = 0.0,
                               std::optional<double> epsilon = std::nullopt,
                               int dim = 2);

/// (1, 0.1 / (kappa xi_min^{2 alpha})). Throws when the ratio is below 10.
std::pair<double, double> box_validity_window(const Grid& grid, double alpha,
                                              double kappa);

struct BoundReport {
  bool pass = false;
  /// fit - upper (1 - tol); >= 0 passes. NaN without an upper bound.
  double margin_upper = 0.0;
  /// lower (1 + tol) - fit; >= 0 passes. NaN without a lower bound.
  double margin_lower = 0.0;
  std::string upper_note;
  std::string lower_note;
};

/// Throws std::invalid_argument when the fit window leaves the validity window.
BoundReport check_bounds(const RateFit& fit, const BoundPrediction& pred, double tol,
                         std::pair<double, double> validity);
BoundReport check_bounds(const RateFit& fit, const BoundPrediction& pred, double tol);

/// Human-readable block and one CSV row (header from report_csv_header).
std::string report_text(const std::string& label, const RateFit& fit,
                        const BoundPrediction& pred, const BoundReport& rep, double tol);
std::string report_csv_header();
std::string report_csv_row(const std::string& label, const RateFit& fit,
                           const BoundPrediction& pred, const BoundReport& rep, double tol);

/// Shortest representation that reads back to the same double (17 digits).
std::string fmt17(double x);

}  // namespace decaylab
