#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "decaylab/dclb.hpp"
#include "decaylab/fft.hpp"
#include "decaylab/grid.hpp"
#include "decaylab/parallel.hpp"
#include "decaylab/random.hpp"
#include "decaylab/spectral_ops.hpp"

using namespace decaylab;
constexpr double kPi = std::numbers::pi;

namespace {

PhysicalField random_physical(const Grid& g, int comps, std::uint64_t seed) {
  PhysicalField f(g, comps);
  SplitMix64 rng(seed);
  for (double& v : f.data()) v = rng.uniform(-1.0, 1.0);
  return f;
}

}  // namespace

TEST(Grid, UnitBox) {
  Grid g = make_grid(2, 8, 2 * kPi);
  EXPECT_NEAR(g.xi_min(), 1.0, 1e-15);
  EXPECT_NEAR(g.cell_measure(), 1.0, 1e-15);
  EXPECT_EQ(g.size(), 64u);
}

TEST(Grid, LargeBoxes) {
  EXPECT_NEAR(make_grid(2, 256, 128 * 2 * kPi).xi_min(), 1.0 / 128, 1e-15);
  Grid g3 = make_grid(3, 64, 16 * 2 * kPi);
  EXPECT_NEAR(g3.xi_min(), 1.0 / 16, 1e-15);
  EXPECT_NEAR(g3.cell_measure(), std::pow(1.0 / 16, 3), 1e-18);
}

TEST(Grid, RejectsBadShapes) {
  EXPECT_THROW(make_grid(1, 8, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid(4, 8, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid(2, 12, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid(2, 4, 1.0), std::invalid_argument);
  EXPECT_THROW(make_grid(2, 8, -1.0), std::invalid_argument);
}

TEST(Grid, IndexRoundTrip) {
  Grid g = make_grid(3, 8, 2 * kPi);
  for (std::size_t f = 0; f < g.size(); ++f) {
    auto k = g.lattice_index(f);
    EXPECT_EQ(g.flat_index(k), f);
    auto mk = g.lattice_index(g.negated(f));
    for (int a = 0; a < 3; ++a) {
      int expect = -k[a];
      if (expect == 4) expect = -4;
      EXPECT_EQ(mk[a], expect);
    }
  }
}

TEST(Grid, BallCountApproximatesArea) {
  Grid g = make_grid(2, 256, 128 * 2 * kPi);
  double area = lattice_count(g, 1.0) * g.cell_measure();
  EXPECT_NEAR(area, kPi, 0.01 * kPi);
}

// Direct sum of the forward convention on tiny grids.
TEST(Fft, MatchesDirectSum) {
  for (int dim : {2, 3}) {
    Grid g = make_grid(dim, dim == 2 ? 8 : 8, 3.0);
    PhysicalField u = random_physical(g, 1, 42 + dim);
    SpectralField c = fourier_transform(u);
    double norm = std::pow(g.spacing() / std::sqrt(2 * kPi), dim);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      Vec3 xi = g.wavevector(k);
      cplx sum = 0.0;
      for (std::size_t x = 0; x < g.size(); ++x) {
        Vec3 p = u.position(x);
        double ph = xi[0] * p[0] + xi[1] * p[1] + xi[2] * p[2];
        sum += u.component(0)[x] * std::polar(1.0, -ph);
      }
      worst = std::max(worst, std::abs(norm * sum - c.at(0, k)));
    }
    EXPECT_LT(worst, 1e-12) << "dim " << dim;
  }
}

TEST(Fft, RoundTrip) {
  Grid g = make_grid(2, 32, 10.0);
  PhysicalField u = random_physical(g, 2, 5);
  PhysicalField back = inverse_fourier_transform(fourier_transform(u));
  double worst = 0.0;
  for (std::size_t i = 0; i < u.data().size(); ++i)
    worst = std::max(worst, std::abs(u.data()[i] - back.data()[i]));
  EXPECT_LT(worst, 1e-12);
}

TEST(Fft, ConstantField) {
  Grid g = make_grid(2, 16, 4.0);
  PhysicalField u(g, 1);
  for (double& v : u.data()) v = 2.5;
  SpectralField c = fourier_transform(u);
  EXPECT_GT(std::abs(c.at(0, 0)), 1.0);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_LT(std::abs(c.at(0, k)), 1e-12);
}

TEST(Fft, CosineMode) {
  Grid g = make_grid(2, 16, 2 * kPi);
  PhysicalField u(g, 1);
  for (std::size_t x = 0; x < g.size(); ++x) u.component(0)[x] = std::cos(u.position(x)[0]);
  SpectralField c = fourier_transform(u);
  std::size_t plus = g.flat_index({1, 0, 0}), minus = g.flat_index({-1, 0, 0});
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k == plus || k == minus) {
      EXPECT_GT(std::abs(c.at(0, k)), 1.0);
    } else {
      EXPECT_LT(std::abs(c.at(0, k)), 1e-12);
    }
  }
  EXPECT_LT(std::abs(c.at(0, plus) - std::conj(c.at(0, minus))), 1e-13);
  EXPECT_LT(c.hermitian_defect(), 1e-13);
}

TEST(SpectralOps, PlancherelAtTwoSizes) {
  for (int n : {32, 64}) {
    Grid g = make_grid(2, n, 7.0);
    PhysicalField u = random_physical(g, 1, 100 + n);
    double e = u.energy();
    EXPECT_NEAR(sobolev_norm_sq(fourier_transform(u), 0.0), e, 1e-10 * e);
  }
}

TEST(SpectralOps, SobolevSingleMode) {
  Grid g = make_grid(2, 8, 2 * kPi);
  SpectralField f(g, 1);
  EXPECT_EQ(sobolev_norm_sq(f, 1.5), 0.0);
  f.at(0, g.flat_index({2, 0, 0})) = 1.0;  // |xi| = 2, cell measure 1
  EXPECT_NEAR(sobolev_norm_sq(f, 1.0), 4.0, 1e-14);
  EXPECT_THROW(sobolev_norm_sq(f, -0.5), std::invalid_argument);
}

TEST(SpectralOps, ShellMass) {
  Grid g = make_grid(2, 256, 128 * 2 * kPi);
  SpectralField f(g, 1);
  for (auto& c : f.data()) c = 1.0;
  EXPECT_EQ(shell_mass(f, 0.0, 0.5 * g.xi_min()), 0.0);
  EXPECT_NEAR(shell_mass(f, 0.0, 1.0), kPi, 0.05 * kPi);
  double prev = 0.0;
  for (double rho = g.xi_min(); rho <= 1.0; rho *= 1.3) {
    double m = shell_mass(f, 1.0, rho);
    EXPECT_GE(m, prev);
    prev = m;
  }
  // Additive over disjoint shells: I(b) - I(a) is the sum over a < |xi| <= b.
  double a = 0.3, b = 0.7, direct = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    double r = g.magnitudes()[k];
    if (r > a && r <= b) direct += g.cell_measure();
  }
  EXPECT_NEAR(shell_mass(f, 0.0, b) - shell_mass(f, 0.0, a), direct, 1e-12);
}

TEST(SpectralOps, ShellMassVanishesBelowHole) {
  Grid g = make_grid(2, 64, 32 * 2 * kPi);
  SpectralField f(g, 1);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.magnitudes()[k] >= 0.5) f.at(0, k) = 1.0;
  EXPECT_EQ(shell_mass(f, 0.0, 0.4), 0.0);
  EXPECT_GT(shell_mass(f, 0.0, 0.6), 0.0);
}

TEST(SpectralOps, Dealias) {
  Grid g = make_grid(2, 32, 5.0);
  SpectralField low(g, 1), high(g, 1), any(g, 1);
  SplitMix64 rng(3);
  for (std::size_t k = 0; k < g.size(); ++k) {
    cplx v(rng.uniform(), rng.uniform());
    any.at(0, k) = v;
    (dealias_keeps(g, k) ? low : high).at(0, k) = v;
  }
  SpectralField dl = dealias(low);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(dl.at(0, k), low.at(0, k));
  SpectralField dh = dealias(high);
  for (const auto& c : dh.data()) EXPECT_EQ(c, cplx(0.0));
  SpectralField once = dealias(any), twice = dealias(once);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(once.at(0, k), twice.at(0, k));
  EXPECT_TRUE(dealias_keeps(g, g.flat_index({10, -10, 0})));
  EXPECT_FALSE(dealias_keeps(g, g.flat_index({11, 0, 0})));
}

TEST(Dclb, RoundTripAndErrors) {
  Grid g = make_grid(3, 8, 2.5);
  SpectralField f = fourier_transform(random_physical(g, 3, 9));
  std::stringstream ss;
  write_dclb(ss, f);
  std::string bytes = ss.str();
  EXPECT_EQ(bytes.substr(0, 4), "DCLB");
  std::stringstream in(bytes);
  SpectralField back = read_dclb(in);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.components(), 3);
  for (std::size_t i = 0; i < f.data().size(); ++i) EXPECT_EQ(back.data()[i], f.data()[i]);

  std::stringstream cut(bytes.substr(0, bytes.size() - 9));
  EXPECT_THROW(read_dclb(cut), FormatError);
  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream badin(bad);
  EXPECT_THROW(read_dclb(badin), FormatError);
}

TEST(Parallel, PairwiseSumIndependentOfWorkers) {
  std::vector<double> v(100000);
  SplitMix64 rng(8);
  for (double& x : v) x = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-8, 8));
  double ref = pairwise_sum(v);
  for (unsigned jobs : {1u, 3u, 8u}) {
    set_worker_count(jobs);
    std::vector<double> out(v.size());
    parallel_for(v.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) out[i] = v[i];
    });
    EXPECT_EQ(pairwise_sum(out), ref);
  }
  set_worker_count(1);
}
