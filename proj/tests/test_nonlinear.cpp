#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "decaylab/fft.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/linear_evolution.hpp"
#include "decaylab/nonlinear.hpp"
#include "decaylab/random.hpp"
#include "decaylab/simulation.hpp"
#include "decaylab/spectral_ops.hpp"

using namespace decaylab;
constexpr double kPi = std::numbers::pi;

namespace {

// Random real field supported on |k_i| <= limit, so every quadratic product
// is resolved without aliasing into the kept band.
SpectralField band_limited(const Grid& g, int comps, int limit, std::uint64_t seed) {
  SpectralField f(g, comps);
  for (int c = 0; c < comps; ++c) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      auto idx = g.lattice_index(k);
      bool inside = true;
      for (int a = 0; a < g.dim(); ++a) inside &= std::abs(idx[a]) <= limit;
      if (!inside || k == 0) continue;
      std::size_t m = g.negated(k);
      if (m < k) continue;
      double re = hashed_uniform(seed, 2 * (c * g.size() + k)) - 0.5;
      double im = hashed_uniform(seed, 2 * (c * g.size() + k) + 1) - 0.5;
      if (m == k) im = 0.0;
      f.at(c, k) = cplx(re, im);
      f.at(c, m) = cplx(re, -im);
    }
  }
  return f;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    w = std::max(w, std::abs(a.data()[i] - b.data()[i]));
  return w;
}

double max_abs(const SpectralField& a) {
  double w = 0.0;
  for (const auto& c : a.data()) w = std::max(w, std::abs(c));
  return w;
}

SpectralField derivative(const SpectralField& f, int comp, int axis) {
  SpectralField out(f.grid(), 1);
  for (std::size_t k = 0; k < f.modes(); ++k)
    out.at(0, k) = cplx(0.0, f.grid().wavevector(k)[axis]) * f.at(comp, k);
  return out;
}

}  // namespace

TEST(Riesz, SingleModeAndMean) {
  Grid g = make_grid(2, 8, 2 * kPi);
  SpectralField th(g, 1);
  std::size_t k = g.flat_index({1, 0, 0});
  th.at(0, k) = 1.0;
  th.at(0, 0) = 3.0;
  SpectralField u = riesz_velocity(th);
  EXPECT_EQ(u.components(), 2);
  EXPECT_LT(std::abs(u.at(0, k)), 1e-16);
  EXPECT_LT(std::abs(u.at(1, k) - cplx(0.0, -1.0)), 1e-16);
  EXPECT_EQ(u.at(0, 0), cplx(0.0));
  EXPECT_EQ(u.at(1, 0), cplx(0.0));
  SpectralField two(g, 2);
  EXPECT_THROW(riesz_velocity(two), std::invalid_argument);
}

TEST(Riesz, DivergenceFreeAndIsometric) {
  Grid g = make_grid(2, 32, 3.0);
  SpectralField th = band_limited(g, 1, 15, 4);
  SpectralField u = riesz_velocity(th);
  for (std::size_t k = 1; k < g.size(); ++k) {
    Vec3 xi = g.wavevector(k);
    cplx div = xi[0] * u.at(0, k) + xi[1] * u.at(1, k);
    EXPECT_LE(std::abs(div), 1e-15 * g.magnitudes()[k] * std::abs(th.at(0, k)) + 1e-300);
    double mag = std::sqrt(std::norm(u.at(0, k)) + std::norm(u.at(1, k)));
    EXPECT_NEAR(mag, std::abs(th.at(0, k)), 1e-15);
  }
}

TEST(QGNonlinear, TrivialCases) {
  Grid g = make_grid(2, 16, 2 * kPi);
  SpectralField c(g, 1);
  c.at(0, 0) = 2.0;
  EXPECT_LT(max_abs(qg_nonlinear(c)), 1e-15);
  SpectralField wave(g, 1);
  std::size_t k = g.flat_index({2, 1, 0});
  wave.at(0, k) = cplx(0.3, 0.4);
  wave.at(0, g.negated(k)) = cplx(0.3, -0.4);
  EXPECT_LT(max_abs(qg_nonlinear(wave)), 1e-15);
}

// Advective form u . grad theta built from pointwise products on the grid.
TEST(QGNonlinear, MatchesPhysicalSpaceOracle) {
  Grid g = make_grid(2, 32, 5.0);
  SpectralField th = band_limited(g, 1, 8, 11);
  SpectralField u = riesz_velocity(th);
  PhysicalField u1 = inverse_fourier_transform(u);
  PhysicalField tx = inverse_fourier_transform(derivative(th, 0, 0));
  PhysicalField ty = inverse_fourier_transform(derivative(th, 0, 1));
  PhysicalField adv(g, 1);
  for (std::size_t x = 0; x < g.size(); ++x)
    adv.component(0)[x] = u1.component(0)[x] * tx.component(0)[x] +
                          u1.component(1)[x] * ty.component(0)[x];
  SpectralField oracle = -1.0 * dealias(fourier_transform(adv));
  SpectralField got = qg_nonlinear(th);
  EXPECT_LT(max_abs_diff(got, oracle), 1e-12 * max_abs(oracle));
  EXPECT_LT(std::abs(got.at(0, 0)), 1e-15);
}

TEST(QGNonlinear, Orthogonality) {
  Grid g = make_grid(2, 64, 20.0);
  for (std::uint64_t seed : {1, 2, 3}) {
    SpectralField th = band_limited(g, 1, 21, seed);
    double ip = inner_product(th, qg_nonlinear(th));
    double scale = std::pow(sobolev_norm_sq(th, 0.0), 1.5);
    EXPECT_LE(std::abs(ip) / scale, 1e-10);
  }
}

// u = grad cos(k.x) has (u.grad)u + (1/2)(div u)u = (3/2)|k|^2 k sin cos.
TEST(CompressibleNonlinear, GradientModeOracle) {
  Grid g = make_grid(3, 8, 2 * kPi);
  const Vec3 kv{1.0, 1.0, 0.0};
  const double k2 = 2.0;
  PhysicalField u(g, 3), rhs(g, 3);
  for (std::size_t x = 0; x < g.size(); ++x) {
    Vec3 p = u.position(x);
    double th = kv[0] * p[0] + kv[1] * p[1] + kv[2] * p[2];
    for (int c = 0; c < 3; ++c) {
      u.component(c)[x] = -kv[c] * std::sin(th);
      rhs.component(c)[x] = 1.5 * k2 * kv[c] * std::sin(th) * std::cos(th);
    }
  }
  SpectralField oracle = -1.0 * dealias(fourier_transform(rhs));
  SpectralField got = compressible_nonlinear(fourier_transform(u));
  EXPECT_LT(max_abs_diff(got, oracle), 1e-12);
  EXPECT_GT(max_abs(oracle), 0.1);
}

TEST(CompressibleNonlinear, ConstantAndOrthogonality) {
  Grid g = make_grid(3, 16, 6.0);
  SpectralField c(g, 3);
  c.at(0, 0) = 1.0;
  c.at(2, 0) = -2.0;
  EXPECT_LT(max_abs(compressible_nonlinear(c)), 1e-14);
  for (std::uint64_t seed : {5, 6}) {
    SpectralField u = band_limited(g, 3, 5, seed);
    double ip = inner_product(u, compressible_nonlinear(u));
    EXPECT_LE(std::abs(ip) / std::pow(sobolev_norm_sq(u, 0.0), 1.5), 1e-10);
  }
}

TEST(Stepper, LinearLimitIsExact) {
  Grid g = make_grid(3, 16, 4 * 2 * kPi);
  auto sym = DissipativeSymbol::compressible_stokes(3, 0.5);
  SpectralField u0 = band_limited(g, 3, 7, 9);
  ExponentialStepper st(sym, nullptr, g, 0.5);
  SolverState s{u0, 0.0, 0, {}};
  for (int i = 0; i < 5; ++i) st.step(s, 0.2);
  st.step(s, 0.05);
  SpectralField ref = evolve_linear(u0, sym, 1.05);
  EXPECT_LT(max_abs_diff(s.field, ref), 1e-14 * max_abs(u0));
  EXPECT_NEAR(s.time, 1.05, 1e-15);
  EXPECT_EQ(s.step_count, 6);
}

TEST(Stepper, PhiFunctions) {
  for (double z : {-30.0, -1.0, -0.05, -1e-8, 0.0}) {
    double p1 = z == 0.0 ? 1.0 : std::expm1(z) / z;
    EXPECT_NEAR(phi1(z), p1, 1e-14);
    if (std::abs(z) > 0.5) EXPECT_NEAR(phi2(z), (std::exp(z) - 1 - z) / (z * z), 1e-14);
  }
  EXPECT_NEAR(phi2(0.0), 0.5, 1e-16);
  EXPECT_NEAR(phi2(-0.05), (std::exp(-0.05) - 1 + 0.05) / 0.0025, 1e-12);
}

namespace {

SpectralField qg_datum(const Grid& g) {
  DatumSpec d;
  d.kind = DatumKind::RandomPhasePowerLaw;
  d.q = 0.0;
  d.cutoff = 2.0;
  d.seed = 2;
  SpectralField f = generate(d, g);
  double rms = std::sqrt(sobolev_norm_sq(f, 0.0) / std::pow(g.box_length(), 2));
  f *= 0.5 / rms;
  return f;
}

SpectralField qg_advance(const Grid& g, const SpectralField& th0, double h, double t) {
  auto sym = DissipativeSymbol::fractional_laplacian(2, 1.0, 0.05);
  ExponentialStepper st(sym, std::make_shared<QGNonlinearity>(g), g, 0.5);
  SolverState s{th0, 0.0, 0, {}};
  int n = static_cast<int>(std::lround(t / h));
  for (int i = 0; i < n; ++i) st.step(s, h);
  return s.field;
}

}  // namespace

TEST(Stepper, SecondOrderConvergence) {
  Grid g = make_grid(2, 32, 4 * 2 * kPi);
  SpectralField th0 = qg_datum(g);
  SpectralField a = qg_advance(g, th0, 0.2, 2.0);
  SpectralField b = qg_advance(g, th0, 0.1, 2.0);
  SpectralField c = qg_advance(g, th0, 0.05, 2.0);
  double e1 = std::sqrt(sobolev_norm_sq(a - b, 0.0));
  double e2 = std::sqrt(sobolev_norm_sq(b - c, 0.0));
  ASSERT_GT(e2, 0.0);
  EXPECT_GE(std::log2(e1 / e2), 1.8);
}

TEST(Stepper, CflViolationNamesAdmissibleStep) {
  Grid g = make_grid(2, 32, 4 * 2 * kPi);
  SpectralField th0 = qg_datum(g);
  th0 *= 50.0;
  auto sym = DissipativeSymbol::fractional_laplacian(2, 1.0, 1.0);
  ExponentialStepper st(sym, std::make_shared<QGNonlinearity>(g), g, 0.5);
  SolverState s{th0, 0.0, 0, {}};
  double limit = st.admissible_dt(s);
  ASSERT_GT(limit, 0.0);
  try {
    st.step(s, 2 * limit);
    FAIL() << "expected a CFL violation";
  } catch (const CflViolation& e) {
    EXPECT_NEAR(e.admissible_dt(), limit, 1e-12 * limit);
    EXPECT_NE(std::string(e.what()).find("admissible dt"), std::string::npos);
  }
}

TEST(Stepper, EnergyNeverIncreases) {
  Grid g = make_grid(2, 32, 4 * 2 * kPi);
  auto sym = DissipativeSymbol::fractional_laplacian(2, 1.0, 0.05);
  ExponentialStepper st(sym, std::make_shared<QGNonlinearity>(g), g, 0.5);
  SolverState s{qg_datum(g), 0.0, 0, {}};
  double e = sobolev_norm_sq(s.field, 0.0);
  for (int i = 0; i < 40; ++i) {
    st.step(s, 0.1);
    double next = sobolev_norm_sq(s.field, 0.0);
    EXPECT_LE(next, e * (1 + 1e-10));
    e = next;
  }
  EXPECT_LT(s.field.hermitian_defect(), 1e-14);
}

TEST(Simulation, ZeroDatum) {
  QGConfig cfg;
  cfg.grid = make_grid(2, 32, 16.0);
  cfg.dt = 0.5;
  RunOptions opt;
  opt.sample_times = {0.0, 1.0, 2.0};
  opt.s_values = {0.0, 1.0};
  auto r = run_simulation(cfg, SpectralField(cfg.grid, 1), opt);
  EXPECT_TRUE(r.valid);
  for (const auto* ser : {&r.nonlinear, &r.linear, &r.difference})
    for (const auto& row : ser->values)
      for (double x : row) EXPECT_EQ(x, 0.0);
}

TEST(Simulation, QGSeriesAndEnergyLaw) {
  QGConfig cfg;
  cfg.grid = make_grid(2, 32, 4 * 2 * kPi);
  cfg.kappa = 0.05;
  cfg.dt = 0.1;
  RunOptions opt;
  opt.sample_times = {0.0, 0.5, 1.0, 2.0, 3.0};
  opt.s_values = {0.0, 1.0};
  auto r = run_simulation(cfg, qg_datum(cfg.grid), opt);
  ASSERT_TRUE(r.valid) << r.failure;
  ASSERT_EQ(r.nonlinear.times.size(), 5u);
  for (std::size_t i = 1; i < 5; ++i)
    EXPECT_LE(r.nonlinear.values[i][0], r.nonlinear.values[i - 1][0]);
  EXPECT_EQ(r.difference.values[0][0], 0.0);
  EXPECT_GT(r.difference.values[4][0], 0.0);
  for (const auto& d : r.diagnostics) EXPECT_LE(d.energy_law_residual, 1e-8);
}

TEST(Simulation, RejectsMismatchedData) {
  QGConfig cfg;
  cfg.grid = make_grid(2, 16, 16.0);
  RunOptions opt;
  opt.sample_times = {0.0, 1.0};
  EXPECT_THROW(run_simulation(cfg, SpectralField(cfg.grid, 2), opt), std::invalid_argument);
  opt.sample_times = {1.0, 0.5};
  EXPECT_THROW(run_simulation(cfg, SpectralField(cfg.grid, 1), opt), std::invalid_argument);
  CompressibleConfig cc;
  cc.grid = make_grid(3, 8, 8.0);
  opt.sample_times = {0.0, 1.0};
  EXPECT_THROW(run_simulation(cc, SpectralField(cc.grid, 1), opt), std::invalid_argument);
}
