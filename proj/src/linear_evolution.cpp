#include "decaylab/linear_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "decaylab/parallel.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

std::size_t NormTimeSeries::s_index(double s) const {
  for (std::size_t j = 0; j < s_values.size(); ++j)
    if (s_values[j] == s) return j;
  throw std::invalid_argument("series has no column for s = " + std::to_string(s));
}

std::vector<double> NormTimeSeries::column(double s) const {
  const std::size_t j = s_index(s);
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& row : values) out.push_back(row[j]);
  return out;
}

SpectralField evolve_linear(const SpectralField& v0, const DissipativeSymbol& sym,
                            double t) {
  const Grid& grid = v0.grid();
  if (sym.dim() != grid.dim())
    throw std::invalid_argument("symbol dimension does not match grid");
  if (sym.components() != v0.components())
    throw std::invalid_argument("symbol has " + std::to_string(sym.components()) +
                                " components, field has " +
                                std::to_string(v0.components()));
  if (!(t >= 0.0)) throw std::invalid_argument("evolution time must be >= 0");
  SpectralField out = v0;
  if (t == 0.0) return out;
  const std::size_t stride = grid.size();
  parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t f = lo; f < hi; ++f) {
      const double xi_sq = grid.wavenumber_sq(f);
      if (xi_sq == 0.0) continue;
      const ModeRates r = sym.rates(xi_sq);
      sym.apply_split(grid.wavevector(f), xi_sq, std::exp(t * r.transverse),
                      std::exp(t * r.longitudinal), &out.at(0, f), stride);
    }
  });
  return out;
}

// |e^{tM} v|^2 = e^{2t lambda_T} |P_T v|^2 + e^{2t lambda_L} |P_L v|^2 per mode,
// so the series needs the two projected energies once and a weighted sum
// of exponentials per sample.
NormTimeSeries linear_norm_series(const SpectralField& v0,
                                  const DissipativeSymbol& sym,
                                  const std::vector<double>& times,
                                  const std::vector<double>& s_values) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw std::invalid_argument("sample times must be >= 0");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("sample times must be strictly ascending");
  }
  for (double s : s_values)
    if (!(s >= 0.0)) throw std::invalid_argument("Sobolev index must be >= 0");
  const Grid& grid = v0.grid();
  if (sym.dim() != grid.dim() || sym.components() != v0.components())
    throw std::invalid_argument("symbol does not match field shape");

  const std::size_t n = grid.size();
  const int comps = v0.components();
  std::vector<double> e_t(n), e_l(n), l_t(n), l_l(n);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    cplx p[3];
    for (std::size_t f = lo; f < hi; ++f) {
      const double xi_sq = grid.wavenumber_sq(f);
      double total = 0.0;
      for (int c = 0; c < comps; ++c) {
        p[c] = v0.at(c, f);
        total += std::norm(p[c]);
      }
      if (xi_sq == 0.0) {
        e_t[f] = total;
        e_l[f] = l_t[f] = l_l[f] = 0.0;
        continue;
      }
      sym.apply_split(grid.wavevector(f), xi_sq, 1.0, 0.0, p, 1);
      double et = 0.0, el = 0.0;
      for (int c = 0; c < comps; ++c) {
        et += std::norm(p[c]);
        el += std::norm(v0.at(c, f) - p[c]);
      }
      e_t[f] = et;
      e_l[f] = el;
      const ModeRates r = sym.rates(xi_sq);
      l_t[f] = 2.0 * r.transverse;
      l_l[f] = 2.0 * r.longitudinal;
    }
  });

  NormTimeSeries series;
  series.model = "linear";
  series.times = times;
  series.s_values = s_values;
  std::vector<double> energy(n), terms(n);
  for (double t : times) {
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t f = lo; f < hi; ++f) {
        double e = 0.0;
        if (e_t[f] != 0.0) e += e_t[f] * std::exp(t * l_t[f]);
        if (e_l[f] != 0.0) e += e_l[f] * std::exp(t * l_l[f]);
        energy[f] = e;
      }
    });
    std::vector<double> row;
    for (double s : s_values) {
      parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t f = lo; f < hi; ++f)
          terms[f] = energy[f] * sobolev_weight(grid.wavenumber_sq(f), s);
      });
      row.push_back(pairwise_sum(terms) * grid.cell_measure());
    }
    series.values.push_back(std::move(row));
  }
  return series;
}

std::vector<double> geometric_times(double t0, double growth, double t_end) {
  if (!(t0 > 0.0) || !(growth > 1.0))
    throw std::invalid_argument("geometric schedule needs t0 > 0 and growth > 1");
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double t = t0 * std::pow(growth, j);
    if (t > t_end * (1.0 + 1e-12)) break;
    out.push_back(t);
  }
  return out;
}

LinearPrediction predicted_linear_exponent(int dim, double alpha,
                                           const CharacterValue& r_star, double s) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha out of range (0,1]");
  if (!(s >= 0.0)) throw std::invalid_argument("s must be >= 0");
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  switch (r_star.kind) {
    case CharacterClass::LowerEndpoint:
      return {LinearRateKind::SlowerThanAlgebraic, kNaN};
    case CharacterClass::Infinite:
      return {LinearRateKind::FasterThanAlgebraic, kNaN};
    case CharacterClass::Finite:
      break;
  }
  return {LinearRateKind::TwoSided, (0.5 * dim + r_star.value + s) / alpha};
}

double dissipation_inequality_defect(const SpectralField& v0,
                                     const DissipativeSymbol& sym,
                                     const std::vector<double>& times) {
  const double c = sym.min_rate_constant();
  double worst = -std::numeric_limits<double>::infinity();
  double prev_t = 0.0;
  double prev_e = 0.0;
  bool have_prev = false;
  for (double t : times) {
    const SpectralField v = evolve_linear(v0, sym, t);
    const double e = sobolev_norm_sq(v, 0.0);
    if (have_prev && prev_e > 0.0) {
      const double rate = (e - prev_e) / (t - prev_t);
      const double bound = -2.0 * c * sobolev_norm_sq(v, sym.alpha());
      worst = std::max(worst, (rate - bound) / prev_e);
    }
    prev_t = t;
    prev_e = e;
    have_prev = true;
  }
  return worst;
}

}  // namespace decaylab
