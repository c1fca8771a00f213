#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "decaylab/decay_character.hpp"
#include "decaylab/fft.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/random.hpp"
#include "decaylab/spectral_ops.hpp"

using namespace decaylab;
constexpr double kPi = std::numbers::pi;

namespace {

Grid grid2() { return make_grid(2, 64, 32 * 2 * kPi); }
Grid grid3() { return make_grid(3, 16, 4 * 2 * kPi); }

SpectralField random_vector(const Grid& g, std::uint64_t seed) {
  PhysicalField u(g, g.dim());
  SplitMix64 rng(seed);
  for (double& v : u.data()) v = rng.uniform(-1.0, 1.0);
  return fourier_transform(u);
}

}  // namespace

TEST(InitialData, Validation) {
  DatumSpec d;
  d.q = -1.0;  // -n/2 in 2D
  EXPECT_THROW(generate(d, grid2()), std::invalid_argument);
  d.q = 0.0;
  d.cutoff = 100.0;  // past Nyquist
  EXPECT_THROW(generate(d, grid2()), std::invalid_argument);
  DatumSpec a;
  a.kind = DatumKind::Annulus;
  a.inner = 1.0;
  a.outer = 0.5;
  EXPECT_THROW(generate(a, grid2()), std::invalid_argument);
}

TEST(InitialData, PowerLawModulus) {
  DatumSpec d;
  d.q = 1.0;
  d.amplitude = 2.0;
  d.cutoff = 0.5;
  Grid g = grid2();
  SpectralField f = generate(d, g);
  EXPECT_EQ(f.at(0, 0), cplx(0.0));
  for (std::size_t k = 1; k < g.size(); ++k) {
    double r = g.magnitudes()[k];
    double expect = r <= 0.5 ? 2.0 * r : 0.0;
    EXPECT_NEAR(std::abs(f.at(0, k)), expect, 1e-14);
  }
}

TEST(InitialData, AmplitudeDoesNotChangeCharacter) {
  Grid g = make_grid(2, 256, 128 * 2 * kPi);
  DatumSpec d;
  d.q = 1.0;
  auto a = estimate_character(generate(d, g), 0.0);
  d.amplitude = 2.0;
  auto b = estimate_character(generate(d, g), 0.0);
  EXPECT_NEAR(a.r_hat, b.r_hat, 1e-9);
  EXPECT_NEAR(a.r_hat_base, 1.0, 0.1);
}

TEST(InitialData, AnnulusHole) {
  DatumSpec d;
  d.kind = DatumKind::Annulus;
  d.inner = 0.5;
  d.outer = 1.0;
  Grid g = grid2();
  SpectralField f = generate(d, g);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (g.magnitudes()[k] < 0.5) EXPECT_EQ(f.at(0, k), cplx(0.0));
  Grid big = make_grid(2, 256, 128 * 2 * kPi);
  EXPECT_EQ(estimate_character(generate(d, big), 0.0).classification,
            CharacterClass::Infinite);
}

TEST(InitialData, RandomPhaseIsRealAndSeeded) {
  DatumSpec d;
  d.kind = DatumKind::RandomPhasePowerLaw;
  d.q = 0.5;
  d.seed = 4;
  d.cutoff = 0.9;
  Grid g = grid2();
  SpectralField a = generate(d, g), b = generate(d, g);
  EXPECT_LT(a.hermitian_defect(), 1e-15);
  for (std::size_t i = 0; i < a.data().size(); ++i) EXPECT_EQ(a.data()[i], b.data()[i]);
  d.seed = 5;
  SpectralField c = generate(d, g);
  bool differs = false;
  for (std::size_t i = 0; i < a.data().size(); ++i) differs |= a.data()[i] != c.data()[i];
  EXPECT_TRUE(differs);

  FourierTransform fft(g);
  PhysicalField x(g, 1);
  double imag = fft.inverse(a.component(0), x.component(0));
  double scale = 0.0;
  for (double v : x.data()) scale = std::max(scale, std::abs(v));
  EXPECT_LE(imag, 1e-12 * scale);
}

TEST(InitialData, VectorDataAndProfiles) {
  DatumSpec d;
  d.kind = DatumKind::Gaussian;
  d.width = 3.0;
  d.components = 3;
  Grid g = grid3();
  SpectralField f = generate(d, g);
  EXPECT_EQ(f.components(), 3);
  EXPECT_LT(f.hermitian_defect(), 1e-15);
  for (CutoffProfile p : {CutoffProfile::Smooth, CutoffProfile::Kernel}) {
    DatumSpec s;
    s.profile = p;
    s.cutoff = 0.5;
    SpectralField h = generate(s, grid2());
    EXPECT_TRUE(h.all_finite());
    EXPECT_GT(sobolev_norm_sq(h, 0.0), 0.0);
  }
}

TEST(Solenoidal, DivergenceFreeUnchanged) {
  Grid g = grid3();
  SpectralField p = solenoidal_project(random_vector(g, 2));
  EXPECT_LT(max_divergence(p), 1e-13);
  SpectralField again = solenoidal_project(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.data().size(); ++i)
    worst = std::max(worst, std::abs(again.data()[i] - p.data()[i]));
  EXPECT_LE(worst, 1e-14);
}

TEST(Solenoidal, GradientModeVanishes) {
  Grid g = grid3();
  SpectralField u(g, 3);
  std::size_t k = g.flat_index({1, 2, -1});
  Vec3 xi = g.wavevector(k);
  for (int c = 0; c < 3; ++c) u.at(c, k) = cplx(0.0, xi[c]);
  SpectralField p = solenoidal_project(u);
  for (const auto& c : p.data()) EXPECT_LT(std::abs(c), 1e-15);
}

TEST(Solenoidal, Contraction) {
  Grid g = grid3();
  SpectralField u = random_vector(g, 7);
  EXPECT_LE(sobolev_norm_sq(solenoidal_project(u), 0.0), sobolev_norm_sq(u, 0.0));
  SpectralField scalar(g, 1);
  EXPECT_THROW(solenoidal_project(scalar), std::invalid_argument);
}
