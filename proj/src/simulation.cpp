#include "decaylab/simulation.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "decaylab/parallel.hpp"
#include "decaylab/spectral_ops.hpp"

namespace decaylab {

double phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 0.1) {
    // sum_k z^k / (k+2)!, truncated where the next term is below 1e-17.
    double coef = 1.0 / 2.0;
    double term = coef;
    double acc = term;
    double zk = 1.0;
    for (int k = 1; k <= 10; ++k) {
      coef /= (k + 2);
      zk *= z;
      acc += coef * zk;
    }
    return acc;
  }
  return (std::expm1(z) - z) / (z * z);
}

ExponentialStepper::ExponentialStepper(DissipativeSymbol sym,
                                       std::shared_ptr<NonlinearTerm> nonlinear,
                                       const Grid& grid, double cfl_safety)
    : sym_(std::move(sym)),
      nonlinear_(std::move(nonlinear)),
      grid_(grid),
      cfl_safety_(cfl_safety),
      n0_(grid, sym_.components()),
      n1_(grid, sym_.components()),
      work_(grid, sym_.components()) {
  if (sym_.dim() != grid.dim())
    throw std::invalid_argument("symbol dimension does not match grid");
  if (nonlinear_ && nonlinear_->components() != sym_.components())
    throw std::invalid_argument("nonlinear term and symbol disagree on components");
  if (!(cfl_safety > 0.0)) throw std::invalid_argument("cfl_safety must be > 0");
  xi_.resize(grid.size());
  xi_sq_.resize(grid.size());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    xi_[f] = grid.wavevector(f);
    xi_sq_[f] = grid.wavenumber_sq(f);
  }
}

const ExponentialStepper::Factors& ExponentialStepper::factors(double h) {
  Factors* slot = nullptr;
  if (main_.h == h) return main_;
  if (odd_.h == h) return odd_;
  // The first step size seen is treated as the main one.
  slot = main_.h < 0.0 ? &main_ : &odd_;
  Factors& f = *slot;
  const std::size_t n = grid_.size();
  for (auto* v : {&f.e_t, &f.e_l, &f.p1_t, &f.p1_l, &f.p2_t, &f.p2_l}) v->resize(n);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t m = lo; m < hi; ++m) {
      const ModeRates r = sym_.rates(xi_sq_[m]);
      const double zt = h * r.transverse, zl = h * r.longitudinal;
      f.e_t[m] = std::exp(zt);
      f.e_l[m] = std::exp(zl);
      f.p1_t[m] = h * phi1(zt);
      f.p1_l[m] = h * phi1(zl);
      f.p2_t[m] = h * phi2(zt);
      f.p2_l[m] = h * phi2(zl);
    }
  });
  f.h = h;
  return f;
}

double ExponentialStepper::admissible_dt(const SolverState& state) {
  if (!nonlinear_) return INFINITY;
  nonlinear_->evaluate(state.field, n0_);
  const double vmax = nonlinear_->last_max_velocity();
  return vmax > 0.0 ? cfl_safety_ * grid_.spacing() / vmax : INFINITY;
}

void ExponentialStepper::step(SolverState& state, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be > 0");
  const Factors& f = factors(h);
  const int comps = sym_.components();
  const std::size_t n = grid_.size();
  SpectralField& v = state.field;

  if (!nonlinear_) {
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t m = lo; m < hi; ++m)
        sym_.apply_split(xi_[m], xi_sq_[m], f.e_t[m], f.e_l[m], &v.at(0, m), n);
    });
  } else {
    nonlinear_->evaluate(v, n0_);
    const double vmax = nonlinear_->last_max_velocity();
    state.diagnostics.max_velocity = vmax;
    if (vmax > 0.0) {
      const double limit = cfl_safety_ * grid_.spacing() / vmax;
      if (h > limit) {
        std::ostringstream msg;
        msg << "CFL violation at t=" << state.time << ": dt=" << h
            << " exceeds admissible dt=" << limit;
        throw CflViolation(msg.str(), limit);
      }
    }
    // Stage 1: a = E v + h phi1 N(v).
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
      std::array<cplx, 3> lin{}, non{};
      for (std::size_t m = lo; m < hi; ++m) {
        for (int c = 0; c < comps; ++c) {
          lin[c] = v.at(c, m);
          non[c] = n0_.at(c, m);
        }
        sym_.apply_split(xi_[m], xi_sq_[m], f.e_t[m], f.e_l[m], lin.data(), 1);
        sym_.apply_split(xi_[m], xi_sq_[m], f.p1_t[m], f.p1_l[m], non.data(), 1);
        for (int c = 0; c < comps; ++c) work_.at(c, m) = lin[c] + non[c];
      }
    });
    nonlinear_->evaluate(work_, n1_);
    // Stage 2: v = a + h phi2 (N(a) - N(v)).
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
      std::array<cplx, 3> corr{};
      for (std::size_t m = lo; m < hi; ++m) {
        for (int c = 0; c < comps; ++c) corr[c] = n1_.at(c, m) - n0_.at(c, m);
        sym_.apply_split(xi_[m], xi_sq_[m], f.p2_t[m], f.p2_l[m], corr.data(), 1);
        for (int c = 0; c < comps; ++c) v.at(c, m) = work_.at(c, m) + corr[c];
      }
    });
  }
  state.time += h;
  ++state.step_count;
}

namespace {

// 2 Re <v, L v> with L v formed from the symbol matrix.
double linear_energy_rate(const DissipativeSymbol& sym, const SpectralField& v) {
  const Grid& grid = v.grid();
  const int comps = v.components();
  std::vector<double> terms(grid.size(), 0.0);
  std::vector<double> xi(grid.dim());
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Vec3 k = grid.wavevector(f);
    for (int a = 0; a < grid.dim(); ++a) xi[a] = k[a];
    const SmallMatrix m = sym.matrix(xi);
    double acc = 0.0;
    for (int i = 0; i < comps; ++i) {
      cplx lv = 0.0;
      for (int j = 0; j < comps; ++j) lv += m(i, j) * v.at(j, f);
      acc += (std::conj(v.at(i, f)) * lv).real();
    }
    terms[f] = 2.0 * acc;
  }
  return pairwise_sum(terms) * grid.cell_measure();
}

// Dissipation written with Sobolev norms only:
//   fractional Laplacian: 2 kappa ||Lambda^alpha v||^2
//   compressible Stokes:  2 ||grad u||^2 + (2/eps) ||div u||^2
double dissipation(const DissipativeSymbol& sym, const SpectralField& v) {
  if (sym.kind() == DissipativeSymbol::Kind::FractionalLaplacian)
    return 2.0 * sym.kappa() * sobolev_norm_sq(v, sym.alpha());
  const Grid& grid = v.grid();
  std::vector<double> terms(grid.size(), 0.0);
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const Vec3 xi = grid.wavevector(f);
    cplx d = 0.0;
    for (int c = 0; c < grid.dim(); ++c) d += xi[c] * v.at(c, f);
    terms[f] = std::norm(d);
  }
  const double div_sq = pairwise_sum(terms) * grid.cell_measure();
  return 2.0 * sobolev_norm_sq(v, 1.0) + 2.0 / sym.epsilon() * div_sq;
}

NormTimeSeries empty_series(const std::string& model, const RunOptions& opts) {
  NormTimeSeries s;
  s.model = model;
  s.s_values = opts.s_values;
  return s;
}

std::vector<double> norms(const SpectralField& v, const std::vector<double>& s_values) {
  std::vector<double> row;
  for (double s : s_values) row.push_back(sobolev_norm_sq(v, s));
  return row;
}

}  // namespace

SimulationResult run_simulation(const DissipativeSymbol& sym,
                                std::shared_ptr<NonlinearTerm> nonlinear,
                                const SpectralField& v0, double dt,
                                double cfl_safety, const RunOptions& opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  for (std::size_t i = 1; i < opts.sample_times.size(); ++i)
    if (!(opts.sample_times[i] > opts.sample_times[i - 1]))
      throw std::invalid_argument("sample times must be strictly ascending");
  if (!opts.sample_times.empty() && opts.sample_times.front() < 0.0)
    throw std::invalid_argument("sample times must be >= 0");

  const Grid& grid = v0.grid();
  ExponentialStepper stepper(sym, nonlinear, grid, cfl_safety);
  SimulationResult result;
  result.nonlinear = empty_series("nonlinear", opts);
  result.linear = empty_series("linear", opts);
  result.difference = empty_series("difference", opts);

  SolverState state{v0, 0.0, 0, {}};
  double energy = sobolev_norm_sq(state.field, 0.0);
  state.diagnostics.energy = energy;
  SpectralField nv(grid, v0.components());

  for (std::size_t idx = 0; idx < opts.sample_times.size(); ++idx) {
    const double target = opts.sample_times[idx];
    try {
      while (state.time < target) {
        const double remaining = target - state.time;
        const bool last = remaining <= dt * (1.0 + 1e-9);
        const double h = last ? remaining : dt;
        SolverState before = state;
        stepper.step(state, h);
        if (last) state.time = target;
        const double e = sobolev_norm_sq(state.field, 0.0);
        if (!std::isfinite(e) || !state.field.all_finite()) {
          result.valid = false;
          result.failure = "non-finite field at t=" + std::to_string(state.time);
          result.last_valid_state = std::move(before);
          return result;
        }
        if (energy > 0.0) {
          const double growth = (e - energy) / energy;
          result.max_energy_growth = std::max(result.max_energy_growth, growth);
          if (growth > opts.energy_growth_tolerance) {
            result.valid = false;
            result.failure = "energy grew by " + std::to_string(growth) +
                             " (relative) in one step at t=" +
                             std::to_string(state.time);
            result.last_valid_state = std::move(before);
            return result;
          }
        }
        energy = e;
        state.diagnostics.energy = e;
      }
    } catch (const CflViolation& e) {
      result.valid = false;
      result.failure = e.what();
      result.last_valid_state = state;
      return result;
    }

    // Samples.
    const SpectralField lin = evolve_linear(v0, sym, target);
    SpectralField diff = state.field;
    diff -= lin;
    result.nonlinear.times.push_back(target);
    result.nonlinear.values.push_back(norms(state.field, opts.s_values));
    result.linear.times.push_back(target);
    result.linear.values.push_back(norms(lin, opts.s_values));
    result.difference.times.push_back(target);
    result.difference.values.push_back(norms(diff, opts.s_values));

    SampleDiagnostics diag{target, 0.0, 0.0, 0.0};
    const double e0 = sobolev_norm_sq(state.field, 0.0);
    if (nonlinear && e0 > 0.0) {
      nonlinear->evaluate(state.field, nv);
      const double pairing = inner_product(state.field, nv);
      const double dedt = linear_energy_rate(sym, state.field) + 2.0 * pairing;
      diag.energy_law_residual = std::abs(dedt + dissipation(sym, state.field)) / e0;
      diag.orthogonality_defect = std::abs(pairing) / std::pow(e0, 1.5);
      diag.max_velocity = nonlinear->last_max_velocity();
      state.diagnostics.orthogonality_defect = diag.orthogonality_defect;
      state.diagnostics.max_velocity = diag.max_velocity;
    }
    result.diagnostics.push_back(diag);
    if (opts.on_sample) opts.on_sample(idx, state);
  }
  result.last_valid_state = state;
  return result;
}

SimulationResult run_simulation(const QGConfig& cfg, const SpectralField& theta0,
                                const RunOptions& opts) {
  if (cfg.grid.dim() != 2) throw std::invalid_argument("QG runs need a 2D grid");
  if (theta0.components() != 1 || !(theta0.grid() == cfg.grid))
    throw std::invalid_argument("QG datum must be a scalar field on the config grid");
  for (double s : opts.s_values)
    if (s > 0.0 && !(cfg.alpha > 0.5))
      throw std::invalid_argument(
          "Sobolev-norm QG runs need 1/2 < alpha <= 1 (existence regime)");
  auto sym = DissipativeSymbol::fractional_laplacian(2, cfg.alpha, cfg.kappa, 1);
  RunOptions o = opts;
  if (o.sample_times.empty()) o.sample_times = {cfg.t_end};
  return run_simulation(sym, std::make_shared<QGNonlinearity>(cfg.grid), theta0,
                        cfg.dt, cfg.cfl_safety, o);
}

SimulationResult run_simulation(const CompressibleConfig& cfg,
                                const SpectralField& u0, const RunOptions& opts) {
  if (cfg.grid.dim() != 3) throw std::invalid_argument("compressible runs need a 3D grid");
  if (u0.components() != 3 || !(u0.grid() == cfg.grid))
    throw std::invalid_argument(
        "compressible datum must be a 3-component field on the config grid");
  auto sym = DissipativeSymbol::compressible_stokes(3, cfg.epsilon);
  RunOptions o = opts;
  if (o.sample_times.empty()) o.sample_times = {cfg.t_end};
  return run_simulation(sym, std::make_shared<CompressibleNonlinearity>(cfg.grid), u0,
                        cfg.dt, cfg.cfl_safety, o);
}

}  // namespace decaylab
