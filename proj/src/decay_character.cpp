#include "decaylab/decay_character.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "decaylab/spectral_ops.hpp"

namespace decaylab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct WeightedLine {
  double slope;
  double intercept;
  double slope_stderr;
};

WeightedLine weighted_fit(const std::vector<double>& x,
                          const std::vector<double>& y,
                          const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
  }
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += w[i] * (x[i] - mx) * (x[i] - mx);
    sxy += w[i] * (x[i] - mx) * (y[i] - my);
  }
  WeightedLine line{sxy / sxx, 0.0, 0.0};
  line.intercept = my - line.slope * mx;
  if (x.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (line.intercept + line.slope * x[i]);
      rss += w[i] * r * r;
    }
    line.slope_stderr = std::sqrt(rss / (x.size() - 2) / sxx);
  }
  return line;
}

}  // namespace

double DecayIndicatorCurve::local_slope(std::size_t j) const {
  if (j == 0 || j >= masses.size()) return kNaN;
  if (!(masses[j] > 0.0) || !(masses[j - 1] > 0.0)) return kNaN;
  return std::log(masses[j] / masses[j - 1]) / std::log(radii[j] / radii[j - 1]);
}

std::string to_string(CharacterClass c) {
  switch (c) {
    case CharacterClass::Finite: return "finite";
    case CharacterClass::LowerEndpoint: return "lower-endpoint";
    case CharacterClass::Infinite: return "infinite";
  }
  return "unknown";
}

CharacterValue CharacterValue::infinite() {
  return {CharacterClass::Infinite, std::numeric_limits<double>::infinity()};
}

CharacterValue base_character(const DecayCharacterEstimate& est) {
  return {est.classification, est.r_hat_base};
}

DecayIndicatorCurve indicator_curve(const SpectralField& field, double s) {
  const Grid& g = field.grid();
  DecayIndicatorCurve curve;
  curve.s = s;
  curve.dim = g.dim();
  curve.xi_min = g.xi_min();
  const double rho_max = std::min(1.0, g.points() * g.xi_min() / 8.0);
  const double first = 4.0 * g.xi_min();
  int fitting = 0;
  for (double rho = g.xi_min(); rho <= rho_max * (1.0 + 1e-12); rho *= 2.0) {
    curve.radii.push_back(rho);
    curve.masses.push_back(shell_mass(field, s, rho));
    curve.counts.push_back(lattice_count(g, rho));
    if (rho >= first * (1.0 - 1e-12)) ++fitting;
  }
  if (fitting < 4) {
    throw InsufficientResolution(
        "decay indicator needs >= 4 dyadic shells between 4 xi_min and "
        "min(1, N xi_min / 8); have " + std::to_string(fitting) +
        ". Use N >= 256 points per axis and box_length >= 64 pi.");
  }
  curve.total_mass = shell_mass(field, s, INFINITY);
  return curve;
}

DecayCharacterEstimate estimate_character(const DecayIndicatorCurve& curve,
                                          int dim,
                                          const CharacterThresholds& th) {
  DecayCharacterEstimate est;
  est.s = curve.s;
  est.curve = curve;
  const double floor = th.mass_floor * curve.total_mass;

  std::vector<std::size_t> window;
  for (std::size_t j = 0; j < curve.radii.size(); ++j)
    if (curve.radii[j] >= th.first_shell * curve.xi_min * (1.0 - 1e-12))
      window.push_back(j);

  auto set_infinite = [&] {
    est.classification = CharacterClass::Infinite;
    est.r_hat = std::numeric_limits<double>::infinity();
    est.r_hat_base = est.r_hat;
    return est;
  };

  std::vector<double> x, y, w;
  for (std::size_t j : window) {
    if (curve.masses[j] <= floor) continue;
    x.push_back(std::log(curve.radii[j]));
    y.push_back(std::log(curve.masses[j]));
    w.push_back(static_cast<double>(curve.counts[j]));
  }
  // Vanishing on the whole fit window; shells that are merely below the floor
  // are skipped and the steep slope of the rest decides.
  if (x.empty() || curve.total_mass <= 0.0) return set_infinite();
  if (x.size() < 2)
    throw InsufficientResolution(
        "insufficient resolution: fewer than 2 nonzero shells in the fit window");

  const WeightedLine line = weighted_fit(x, y, w);
  est.slope = line.slope;
  est.slope_stderr = line.slope_stderr;
  est.shells_used = x.size();

  const double slope_cap = 2.0 * th.r_resolvable + dim;
  if (line.slope > slope_cap) return set_infinite();
  if (line.slope - 2.0 * curve.s < th.endpoint_slope) {
    est.classification = CharacterClass::LowerEndpoint;
    est.r_hat = -0.5 * dim + curve.s;
    est.r_hat_base = -0.5 * dim;
    return est;
  }
  est.classification = CharacterClass::Finite;
  est.r_hat = 0.5 * (line.slope - dim);
  est.r_hat_base = est.r_hat - curve.s;
  return est;
}

DecayCharacterEstimate estimate_character(const SpectralField& field, double s) {
  return estimate_character(indicator_curve(field, s), field.grid().dim());
}

ShiftReport shift_consistency(const SpectralField& field, double s) {
  const auto at_s = estimate_character(field, s);
  const auto at_0 = estimate_character(field, 0.0);
  if (at_s.classification != CharacterClass::Finite ||
      at_0.classification != CharacterClass::Finite)
    throw std::runtime_error(
        "shift consistency needs finite decay characters at s and 0 (got " +
        to_string(at_s.classification) + ", " + to_string(at_0.classification) +
        ")");
  return {at_s.r_hat, at_0.r_hat, std::abs(at_s.r_hat - (s + at_0.r_hat))};
}

}  // namespace decaylab
