#include "decaylab/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace decaylab {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RateFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values,
                      std::pair<double, double> window) {
  if (times.size() != values.size())
    throw std::invalid_argument("times and values differ in length");
  if (!(window.first < window.second))
    throw FitError("empty fit window [" + fmt17(window.first) + ", " +
                   fmt17(window.second) + "]");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.first || times[i] > window.second) continue;
    if (!(values[i] > 0.0))
      throw FitError("nonpositive value " + fmt17(values[i]) + " at t=" + fmt17(times[i]));
    x.push_back(std::log1p(times[i]));
    y.push_back(std::log(values[i]));
  }
  const std::size_t n = x.size();
  if (n < 8)
    throw FitError("fit window holds " + std::to_string(n) + " samples, need at least 8");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (intercept + slope * x[i]);
    rss += e * e;
  }
  RateFit fit;
  fit.exponent = slope == 0.0 ? 0.0 : -slope;
  fit.prefactor = std::exp(intercept);
  fit.window = window;
  fit.residual = std::sqrt(rss / n);
  fit.n_points = static_cast<int>(n);
  if (!std::isfinite(fit.residual)) throw FitError("fit residual is not finite");
  if (fit.residual > 0.5)
    throw FitError("not a power law in window: log residual " + fmt17(fit.residual));
  return fit;
}

RateFit fit_power_law(const NormTimeSeries& series, double s,
                      std::pair<double, double> window) {
  return fit_power_law(series.times, series.column(s), window);
}

std::pair<double, double> difference_fit_window(const std::vector<double>& times,
                                                const std::vector<double>& values,
                                                std::pair<double, double> window) {
  if (times.size() != values.size())
    throw std::invalid_argument("times and values differ in length");
  double t_peak = window.first, peak = -INFINITY;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.first || times[i] > window.second) continue;
    if (values[i] > peak) {
      peak = values[i];
      t_peak = times[i];
    }
  }
  return {std::max(window.first, t_peak), window.second};
}

std::string to_string(BoundModel m) {
  switch (m) {
    case BoundModel::Linear: return "Linear";
    case BoundModel::QG_L2: return "QG_L2";
    case BoundModel::QG_Hs: return "QG_Hs";
    case BoundModel::QG_Difference: return "QG_Difference";
    case BoundModel::Comp_L2: return "Comp_L2";
    case BoundModel::Comp_Hs: return "Comp_Hs";
    case BoundModel::Comp_Difference: return "Comp_Difference";
  }
  return "?";
}

BoundModel bound_model_from_string(const std::string& s) {
  for (auto m : {BoundModel::Linear, BoundModel::QG_L2, BoundModel::QG_Hs,
                 BoundModel::QG_Difference, BoundModel::Comp_L2, BoundModel::Comp_Hs,
                 BoundModel::Comp_Difference})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown bound model '" + s + "'");
}

namespace {

void require(bool ok, const std::string& hypothesis) {
  if (!ok) throw std::invalid_argument("hypothesis violated: " + hypothesis);
}

double finite_r(const CharacterValue& r) {
  require(r.kind == CharacterClass::Finite, "r* finite (got " + to_string(r.kind) + ")");
  return r.value;
}

BoundPrediction qg_l2(double a, double r) {
  require(r > -1.0, "-1 < r*");
  BoundPrediction p;
  p.model = BoundModel::QG_L2;
  p.upper = r <= 1.0 - a ? (1.0 + r) / a : (2.0 - a) / a;
  const bool has_lower = (a <= 0.5 && r <= 1.0) || (a > 0.5 && r <= 2.0 * (1.0 - a));
  if (has_lower) p.lower = (1.0 + r) / a;
  if (r <= 1.0 - a)
    p.regime = "sharp (r* <= 1-alpha)";
  else if (has_lower)
    p.regime = "gap (1-alpha < r*, lower bound available)";
  else
    p.regime = "no lower bound";
  return p;
}

BoundPrediction qg_hs(double a, double r, double s) {
  require(a > 0.5, "1/2 < alpha <= 1");
  require(s >= a, "alpha <= s");
  require(r > -1.0, "-1 < r*");
  BoundPrediction p;
  p.model = BoundModel::QG_Hs;
  p.upper = r <= 1.0 - a ? (s + 1.0 + r) / a : (s + 2.0 - a) / a;
  p.regime = r <= 1.0 - a ? "upper only (r* <= 1-alpha)" : "upper only (r* >= 1-alpha)";
  return p;
}

BoundPrediction qg_diff(double a, double r) {
  require(r >= -1.0, "-1 <= r*");
  BoundPrediction p;
  p.model = BoundModel::QG_Difference;
  if (r >= 1.0 - a) {
    p.upper = std::min(3.0 - 2.0 * a, 2.0) / a;
    p.regime = "difference, r* >= 1-alpha";
  } else if (r >= a - 1.0) {
    p.upper = std::min(2.0, 2.0 - a + r) / a;
    p.regime = "difference, alpha-1 <= r* <= 1-alpha";
  } else {
    p.upper = (2.0 - a + r) / a;
    p.regime = "difference, r* < alpha-1";
  }
  return p;
}

BoundPrediction comp_l2(double r) {
  require(r > -1.5, "-3/2 < r*");
  BoundPrediction p;
  p.model = BoundModel::Comp_L2;
  p.upper = std::min(1.5 + r, 2.5);
  if (r <= 1.0) {
    p.lower = 1.5 + r;
    p.regime = "sharp (r* <= 1)";
  } else {
    p.regime = "no lower bound (r* > 1)";
  }
  return p;
}

BoundPrediction comp_hs(double r, double s) {
  require(s >= 1.0, "s >= 1");
  require(r > -1.5, "-3/2 < r*");
  BoundPrediction p;
  p.model = BoundModel::Comp_Hs;
  p.upper = s + std::min(2.5, r + 1.5);
  p.regime = "upper only";
  return p;
}

BoundPrediction comp_diff(double r) {
  require(r > -1.5, "-3/2 < r*");
  BoundPrediction p;
  p.model = BoundModel::Comp_Difference;
  p.upper = std::min(1.75 + r, 2.5);
  p.regime = "difference, upper only";
  return p;
}

}  // namespace

BoundPrediction predict_bounds(BoundModel model, double alpha, const CharacterValue& r_star,
                               double s, std::optional<double> epsilon, int dim) {
  const bool qg = model == BoundModel::QG_L2 || model == BoundModel::QG_Hs ||
                  model == BoundModel::QG_Difference;
  const bool comp = model == BoundModel::Comp_L2 || model == BoundModel::Comp_Hs ||
                    model == BoundModel::Comp_Difference;
  if (model == BoundModel::Linear || qg)
    require(alpha > 0.0 && alpha <= 1.0, "0 < alpha <= 1");
  if (comp && epsilon) require(*epsilon > 0.0, "epsilon > 0");
  require(s >= 0.0, "s >= 0");

  if (model == BoundModel::Linear) {
    const LinearPrediction lp = predicted_linear_exponent(dim, alpha, r_star, s);
    BoundPrediction p;
    p.model = model;
    switch (lp.kind) {
      case LinearRateKind::TwoSided:
        p.upper = p.lower = lp.sigma;
        p.regime = "two-sided";
        break;
      case LinearRateKind::SlowerThanAlgebraic:
        p.regime = "slower than any algebraic rate";
        break;
      case LinearRateKind::FasterThanAlgebraic:
        p.regime = "faster than any algebraic rate";
        break;
    }
    return p;
  }
  const double r = finite_r(r_star);
  switch (model) {
    case BoundModel::QG_L2: return qg_l2(alpha, r);
    case BoundModel::QG_Hs: return qg_hs(alpha, r, s);
    case BoundModel::QG_Difference: return qg_diff(alpha, r);
    case BoundModel::Comp_L2: return comp_l2(r);
    case BoundModel::Comp_Hs: return comp_hs(r, s);
    case BoundModel::Comp_Difference: return comp_diff(r);
    default: break;
  }
  throw std::logic_error("unhandled bound model");
}

std::pair<double, double> box_validity_window(const Grid& grid, double alpha, double kappa) {
  if (!(alpha > 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("alpha and kappa must be > 0");
  const double t_lo = 1.0;
  const double t_hi = 0.1 / (kappa * std::pow(grid.xi_min(), 2.0 * alpha));
  if (!(t_hi / t_lo >= 10.0)) {
    // Need 0.1 / (kappa xi_min^{2a}) >= 10, xi_min = 2 pi / L.
    const double xi_max = std::pow(0.01 / kappa, 1.0 / (2.0 * alpha));
    const double min_box = 2.0 * M_PI / xi_max;
    throw std::invalid_argument("validity window too short (t_hi=" + fmt17(t_hi) +
                                "): box_length must be at least " + fmt17(min_box));
  }
  return {t_lo, t_hi};
}

BoundReport check_bounds(const RateFit& fit, const BoundPrediction& pred, double tol) {
  BoundReport rep;
  bool ok = true;
  if (pred.upper) {
    const double edge = *pred.upper * (1.0 - tol);
    rep.margin_upper = fit.exponent - edge;
    if (rep.margin_upper >= 0.0) {
      rep.upper_note = fit.exponent >= *pred.upper
                           ? "pass: decays at least as fast as the upper bound requires "
                             "(the bound is one-sided)"
                           : "pass: within tolerance of the upper-bound rate";
    } else {
      rep.upper_note = "fail: decays too slowly for the upper bound";
      ok = false;
    }
  } else {
    rep.margin_upper = NAN;
    rep.upper_note = "no upper bound";
  }
  if (pred.lower) {
    const double edge = *pred.lower * (1.0 + tol);
    rep.margin_lower = edge - fit.exponent;
    if (rep.margin_lower >= 0.0) {
      rep.lower_note = "pass: decays no faster than the lower bound allows";
    } else {
      rep.lower_note = "fail: decays too fast for the lower bound";
      ok = false;
    }
  } else {
    rep.margin_lower = NAN;
    rep.lower_note = "no lower bound to violate";
  }
  rep.pass = ok;
  return rep;
}

BoundReport check_bounds(const RateFit& fit, const BoundPrediction& pred, double tol,
                         std::pair<double, double> validity) {
  const double slack = 1e-9 * validity.second;
  if (fit.window.first < validity.first - slack || fit.window.second > validity.second + slack)
    throw std::invalid_argument("fit window [" + fmt17(fit.window.first) + ", " +
                                fmt17(fit.window.second) + "] leaves validity window [" +
                                fmt17(validity.first) + ", " + fmt17(validity.second) + "]");
  return check_bounds(fit, pred, tol);
}

namespace {
std::string opt(const std::optional<double>& v) { return v ? fmt17(*v) : "none"; }
}  // namespace

std::string report_text(const std::string& label, const RateFit& fit,
                        const BoundPrediction& pred, const BoundReport& rep, double tol) {
  std::ostringstream o;
  o << label << " [" << to_string(pred.model) << ", " << pred.regime << "]\n"
    << "  window        [" << fit.window.first << ", " << fit.window.second << "], "
    << fit.n_points << " samples\n"
    << "  fitted        " << fit.exponent << " (log residual " << fit.residual << ")\n"
    << "  upper bound   " << opt(pred.upper) << "  " << rep.upper_note << "\n"
    << "  lower bound   " << opt(pred.lower) << "  " << rep.lower_note << "\n"
    << "  tolerance     " << tol << "\n"
    << "  result        " << (rep.pass ? "pass" : "FAIL") << "\n";
  return o.str();
}

std::string report_csv_header() {
  return "label,model,regime,t_lo,t_hi,n_points,exponent,residual,upper,lower,tol,"
         "margin_upper,margin_lower,pass";
}

std::string report_csv_row(const std::string& label, const RateFit& fit,
                           const BoundPrediction& pred, const BoundReport& rep, double tol) {
  std::ostringstream o;
  o << label << ',' << to_string(pred.model) << ",\"" << pred.regime << "\","
    << fmt17(fit.window.first) << ',' << fmt17(fit.window.second) << ',' << fit.n_points
    << ',' << fmt17(fit.exponent) << ',' << fmt17(fit.residual) << ',' << opt(pred.upper)
    << ',' << opt(pred.lower) << ',' << fmt17(tol) << ',' << fmt17(rep.margin_upper) << ','
    << fmt17(rep.margin_lower) << ',' << (rep.pass ? "pass" : "fail");
  return o.str();
}

}  // namespace decaylab
