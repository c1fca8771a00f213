#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "decaylab/decay_character.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/spectral_ops.hpp"

using namespace decaylab;
constexpr double kPi = std::numbers::pi;

namespace {

Grid standard_grid() { return make_grid(2, 256, 128 * 2 * kPi); }

SpectralField power_law(double q, double cutoff = 1.0) {
  DatumSpec d;
  d.kind = DatumKind::PowerLaw;
  d.q = q;
  d.cutoff = cutoff;
  return generate(d, standard_grid());
}

}  // namespace

TEST(IndicatorCurve, RadiiAndBallArea) {
  Grid g = standard_grid();
  SpectralField one(g, 1);
  for (auto& c : one.data()) c = 1.0;
  one.at(0, 0) = 0.0;
  auto curve = indicator_curve(one, 0.0);
  ASSERT_GE(curve.radii.size(), 4u);
  EXPECT_LE(curve.radii.back(), 1.0 + 1e-12);
  for (std::size_t j = 0; j < curve.radii.size(); ++j) {
    if (j > 0) {
      EXPECT_GT(curve.radii[j], curve.radii[j - 1]);
      EXPECT_GE(curve.masses[j], curve.masses[j - 1]);
    }
    EXPECT_EQ(curve.masses[j], shell_mass(one, 0.0, curve.radii[j]));
  }
  // Large shells only: the first few hold a handful of lattice points.
  for (std::size_t j = 4; j < curve.radii.size(); ++j) {
    double area = kPi * curve.radii[j] * curve.radii[j];
    EXPECT_NEAR(curve.masses[j], area, 0.05 * area);
  }
}

TEST(IndicatorCurve, QuadraticHomogeneity) {
  SpectralField f = power_law(0.5);
  SpectralField g = -3.0 * f;
  auto a = indicator_curve(f, 1.0), b = indicator_curve(g, 1.0);
  for (std::size_t j = 0; j < a.masses.size(); ++j)
    EXPECT_NEAR(b.masses[j], 9.0 * a.masses[j], 1e-12 * b.masses[j]);
}

TEST(IndicatorCurve, TooCoarseGrid) {
  Grid g = make_grid(2, 8, 2 * kPi);
  SpectralField f(g, 1);
  f.at(0, 1) = 1.0;
  EXPECT_THROW(indicator_curve(f, 0.0), InsufficientResolution);
}

TEST(Character, PowerLawRecovery) {
  for (double q : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    auto est = estimate_character(power_law(q), 0.0);
    EXPECT_EQ(est.classification, CharacterClass::Finite) << q;
    EXPECT_NEAR(est.r_hat_base, q, 0.1) << q;
  }
}

TEST(Character, ScaleInvariance) {
  SpectralField f = power_law(1.0);
  auto a = estimate_character(f, 0.0);
  auto b = estimate_character(2.0 * f, 0.0);
  auto c = estimate_character(-1e-6 * f, 0.0);
  EXPECT_NEAR(a.r_hat, b.r_hat, 1e-9);
  EXPECT_NEAR(a.r_hat, c.r_hat, 1e-9);
  EXPECT_EQ(a.classification, c.classification);
}

TEST(Character, AnnulusIsInfinite) {
  DatumSpec d;
  d.kind = DatumKind::Annulus;
  d.inner = 1.5;
  d.outer = 2.0;
  auto est = estimate_character(generate(d, standard_grid()), 0.0);
  EXPECT_EQ(est.classification, CharacterClass::Infinite);
  EXPECT_TRUE(std::isinf(est.r_hat));
  // all masses inside the fitting window vanish
  for (double m : est.curve.masses) EXPECT_EQ(m, 0.0);
}

TEST(Character, LowBallIsZero) {
  auto est = estimate_character(power_law(0.0, 0.5), 0.0);
  EXPECT_NEAR(est.r_hat_base, 0.0, 0.1);
}

TEST(Character, LowerEndpointFromFlatCurve) {
  DecayIndicatorCurve c;
  c.s = 0.0;
  c.dim = 2;
  c.xi_min = 1.0 / 128;
  for (int j = 0; j < 8; ++j) {
    c.radii.push_back(c.xi_min * std::pow(2.0, j));
    c.masses.push_back(1.0 + 0.001 * j);
    c.counts.push_back(4u << (2 * j));
  }
  c.total_mass = 2.0;
  auto est = estimate_character(c, 2);
  EXPECT_EQ(est.classification, CharacterClass::LowerEndpoint);
  EXPECT_EQ(est.r_hat, -1.0);
  EXPECT_EQ(base_character(est).kind, CharacterClass::LowerEndpoint);
}

TEST(Character, SteepCurveIsInfinite) {
  DecayIndicatorCurve c;
  c.dim = 2;
  c.xi_min = 1.0 / 128;
  for (int j = 0; j < 8; ++j) {
    double r = c.xi_min * std::pow(2.0, j);
    c.radii.push_back(r);
    c.masses.push_back(std::pow(r, 30.0));
    c.counts.push_back(4u << (2 * j));
  }
  c.total_mass = 1.0;
  EXPECT_EQ(estimate_character(c, 2).classification, CharacterClass::Infinite);
}

TEST(Character, ShiftLaw) {
  auto ball = power_law(0.0);
  auto r1 = shift_consistency(ball, 1.0);
  EXPECT_NEAR(r1.r_hat_s, 1.0, 0.15);
  EXPECT_NEAR(r1.r_hat_0, 0.0, 0.1);
  EXPECT_LE(r1.defect, 0.15);
  EXPECT_EQ(shift_consistency(ball, 0.0).defect, 0.0);
  auto r2 = shift_consistency(power_law(1.0), 2.0);
  EXPECT_NEAR(r2.r_hat_s, 3.0, 0.2);
  EXPECT_LE(r2.defect, 0.2);
}

// rho^{-2r-n} I_s(rho) <= rho^{-2(r-s)-n} I_0(rho) for rho <= 1, i.e.
// I_s(rho) <= rho^{2s} I_0(rho) shell by shell.
TEST(Character, MonotoneComparison) {
  for (double q : {0.0, 1.0}) {
    auto f = power_law(q);
    for (double s : {0.5, 1.0, 2.0}) {
      for (double rho = 1.0 / 64; rho <= 1.0; rho *= 1.5) {
        double lhs = shell_mass(f, s, rho);
        double rhs = std::pow(rho, 2 * s) * shell_mass(f, 0.0, rho);
        EXPECT_LE(lhs, rhs * (1 + 1e-12)) << q << " " << s << " " << rho;
      }
    }
  }
}

// Seeded random phases leave |u| and so the estimate unchanged; each seed
// must still land on the target.
TEST(Character, RandomPhaseProperty) {
  for (double q : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      DatumSpec d;
      d.kind = DatumKind::RandomPhasePowerLaw;
      d.q = q;
      d.seed = seed;
      auto est = estimate_character(generate(d, standard_grid()), 0.0);
      EXPECT_EQ(est.classification, CharacterClass::Finite);
      EXPECT_NEAR(est.r_hat_base, q, 0.1) << "q " << q << " seed " << seed;
    }
  }
}
