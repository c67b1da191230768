#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dermawave/losses.hpp"
#include "dermawave/materials.hpp"
#include "golden_values.hpp"

using namespace dermawave;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const golden::PermittivityRow& row(const char* id, double f) {
  for (const auto& r : golden::kRows)
    if (std::string(r.id) == id && r.f_hz == f) return r;
  throw std::runtime_error("no golden row");
}

RefractiveIndex water_index_100ghz() {
  const auto& w = row("water", 1e11);
  return {w.n_real, w.n_imag};
}

}  // namespace

TEST(Spreading, UnitDistanceIdentity) {
  const double lg = guided_wavelength(1e11, 2.0);
  PropagationConfig cfg{1e11, lg / (4 * kPi), 1.0, {2.0, 0.0}};
  const auto t = spreading_loss(cfg);
  EXPECT_NEAR(t.factor, 1.0, 1e-12);
  EXPECT_NEAR(t.db, 0.0, 1e-9);
}

TEST(Spreading, WaterAt5mm) {
  PropagationConfig cfg{1e11, 5e-3, 1.0, water_index_100ghz()};
  EXPECT_LT(rel(spreading_loss(cfg).db, golden::kWaterSpreading100GHz5mmDb), 1e-9);
}

TEST(Spreading, DoublingDistanceAdds6dB) {
  PropagationConfig a{1e12, 1e-3, 1.0, {1.5, 0.4}}, b = a;
  b.distance = 2e-3;
  EXPECT_NEAR(spreading_loss(b).db - spreading_loss(a).db, 20 * std::log10(2.0), 1e-9);
}

TEST(Spreading, ZeroDistanceAndNearField) {
  PropagationConfig cfg{1e11, 0.0, 1.0, {2.0, 0.0}};
  EXPECT_EQ(spreading_loss(cfg).factor, 1.0);
  EXPECT_EQ(spreading_loss(cfg).db, 0.0);
  cfg.distance = 1e-6;
  EXPECT_EQ(spreading_loss(cfg).factor, 1.0);
}

TEST(Spreading, InvalidConfig) {
  EXPECT_THROW(spreading_loss({0.0, 1e-3, 1.0, {2.0, 0.0}}), DomainError);
  EXPECT_THROW(spreading_loss({1e11, -1e-3, 1.0, {2.0, 0.0}}), DomainError);
  EXPECT_THROW(spreading_loss({1e11, 1e-3, 0.5, {2.0, 0.0}}), DomainError);
}

TEST(Absorption, Coefficient) {
  EXPECT_EQ(absorption_coefficient({3.0, 0.0}, 1e11), 0.0);
  const auto& w = row("water", 1e11);
  const double mu = absorption_coefficient(water_index_100ghz(), 1e11);
  EXPECT_LT(rel(mu, w.mu_abs), 1e-12);
  EXPECT_NEAR(mu, 3.02e4, 0.01e4);
  const RefractiveIndex n{2.0, 0.3};
  EXPECT_NEAR(absorption_coefficient(n, 4e11) / absorption_coefficient(n, 2e11), 2.0, 1e-12);
}

TEST(Absorption, BeerLambert) {
  EXPECT_EQ(absorption_loss(0.0, 5e-3).factor, 1.0);
  const auto t = absorption_loss(300.0, 5e-3);
  EXPECT_NEAR(t.factor, std::exp(-1.5), 1e-15);
  EXPECT_LT(rel(t.db, golden::kAbsorption300PerM5mmDb), 1e-12);
  const auto a = absorption_loss(123.0, 1e-3), b = absorption_loss(123.0, 2.5e-3),
             ab = absorption_loss(123.0, 3.5e-3);
  EXPECT_LT(rel(ab.factor, a.factor * b.factor), 1e-14);
  EXPECT_THROW(absorption_loss(-1.0, 1e-3), DomainError);
}

TEST(Extinction, KnownValuesAndLimits) {
  EXPECT_EQ(extinction_efficiency(0.0), 0.0);
  EXPECT_LT(rel(extinction_efficiency(kPi), golden::kQextPi), 1e-12);
  EXPECT_LT(rel(extinction_efficiency(kPi), 2.0 + 8.0 / (kPi * kPi)), 1e-12);
  const double big = extinction_efficiency(1000.0);
  EXPECT_GE(big, 1.99);
  EXPECT_LE(big, 2.01);
  EXPECT_LT(rel(extinction_efficiency(1e-5), 0.5e-10), 1e-9);
  EXPECT_THROW(extinction_efficiency(-1.0), DomainError);
}

TEST(Extinction, NonNegativeAndSeriesMatchesClosedForm) {
  for (int i = 0; i <= 2000; ++i) EXPECT_GE(extinction_efficiency(i * 0.01), 0.0);
  // Just above the switch the closed form is used; compare with the series.
  const double p = 1e-3;
  const double series = p * p * (0.5 - p * p * (1.0 / 36.0 - p * p / 1440.0));
  const double half = std::sin(0.5 * p);
  const double closed = 2.0 - 4.0 / p * std::sin(p) + 8.0 * half * half / (p * p);
  EXPECT_LT(rel(closed, series), 1e-9);
  EXPECT_LT(rel(extinction_efficiency(std::nextafter(p, 0.0)), extinction_efficiency(p)), 1e-9);
}

TEST(AbsorptionEfficiency, KnownValuesAndLimits) {
  EXPECT_EQ(absorption_efficiency(0.0), 0.0);
  EXPECT_LT(rel(absorption_efficiency(1.0), golden::kQabsOne), 1e-12);
  EXPECT_NEAR(absorption_efficiency(1.0), 0.4715, 1e-4);
  EXPECT_NEAR(absorption_efficiency(1e6), 1.0, 1e-5);
  EXPECT_LT(rel(absorption_efficiency(1e-6), 2e-6 / 3.0), 1e-6);
  const double b = 1e-3;
  EXPECT_LT(rel(absorption_efficiency(std::nextafter(b, 0.0)), absorption_efficiency(b)), 1e-9);
  for (int i = 0; i <= 5000; ++i) {
    const double q = absorption_efficiency(i * 0.01);
    EXPECT_GE(q, 0.0);
    EXPECT_LE(q, 1.0);
  }
  EXPECT_THROW(absorption_efficiency(-0.1), DomainError);
}

TEST(Rayleigh, KnownValuesAndScaling) {
  EXPECT_EQ(rayleigh_efficiency(0.3, {1.0, 0.0}), 0.0);
  EXPECT_LT(rel(rayleigh_efficiency(0.1, {1.5, 0.0}), golden::kRayleighPsi01N15), 1e-12);
  const RefractiveIndex n{1.3, 0.2};
  EXPECT_NEAR(rayleigh_efficiency(0.2, n) / rayleigh_efficiency(0.1, n), 16.0, 1e-9);
  // Negative Re[z^2] is clamped.
  EXPECT_EQ(rayleigh_efficiency(0.5, {1.0, 0.6}), 0.0);
  EXPECT_THROW(rayleigh_efficiency(-0.1, n), DomainError);
}

TEST(Scattering, EmptyAndSingleSmall) {
  const auto none = scattering_coefficients({}, 1e11);
  EXPECT_EQ(none.small, 0.0);
  EXPECT_EQ(none.large, 0.0);

  // Pick a relative index whose Rayleigh efficiency is 2.3e-5 at psi = 0.1.
  const double r = 5e-6;
  const double f = 0.1 * kSpeedOfLight / (2 * kPi * r);  // psi = 0.1 with n_medium = 1
  ScattererPopulation pop{"x", r, 1e12, {1.5, 0.0}, 1.0};
  const double q = rayleigh_efficiency(pop.size_parameter(f), pop.index);
  const auto mu = scattering_coefficients(std::span(&pop, 1), f);
  EXPECT_EQ(mu.large, 0.0);
  EXPECT_LT(rel(mu.small, 1e12 * q * kPi * r * r), 1e-12);
  EXPECT_LT(rel(1e12 * 2.3e-5 * kPi * r * r, golden::kMuSmallExample), 1e-12);
}

TEST(Scattering, AdipocyteRegimes) {
  const auto& cat = builtin_catalog();
  const auto& ad = cat.cell_species("adipocytes");
  for (double f : {1e11, 1e12}) {
    const auto ecm = refractive_index(mixture_permittivity(cat.ecm_composition("hypodermis"), f, cat));
    const auto cell = refractive_index(mixture_permittivity(ad.composition, f, cat));
    ScattererPopulation pop{ad.id, ad.radius(), ad.number_density, relative_index(cell, ecm),
                            ecm.n_real};
    if (f == 1e11) {
      EXPECT_EQ(pop.regime(f), ScatteringRegime::small);
    } else {
      EXPECT_EQ(pop.regime(f), ScatteringRegime::large);
      // psi = 2 pi r n'_ecm f / c with the oracle's hypodermis ECM index.
      const double psi = 2 * kPi * ad.radius() * row("ecm_hypodermis", f).n_real * f / kSpeedOfLight;
      EXPECT_LT(rel(pop.size_parameter(f), psi), 1e-9);
      EXPECT_NEAR(psi, 1.38, 0.01);
      EXPECT_GT(pop.efficiency(f), 0.0);
    }
  }
}

TEST(Scattering, FiniteAcrossRegimeSwitch) {
  const RefractiveIndex n{1.2, 0.05};
  for (double psi : {0.999, 1.0, 1.001}) {
    const double r = 10e-6;
    const double f = psi * kSpeedOfLight / (2 * kPi * r * 1.5);
    ScattererPopulation pop{"x", r, 1e12, n, 1.5};
    const auto mu = scattering_coefficients(std::span(&pop, 1), f);
    EXPECT_TRUE(std::isfinite(mu.sum()));
    EXPECT_GE(mu.sum(), 0.0);
  }
}

TEST(Scattering, LossDependsOnlyOnSum) {
  const auto t = scattering_loss(40.0, 60.0, 5e-3);
  EXPECT_LT(rel(t.db, golden::kScattering100PerM5mmDb), 1e-12);
  EXPECT_NEAR(t.factor, std::exp(-0.5), 1e-15);
  EXPECT_EQ(scattering_loss(60.0, 40.0, 5e-3).factor, t.factor);
  EXPECT_EQ(scattering_loss(0.0, 0.0, 5e-3).factor, 1.0);
}

TEST(Total, FactorizationAndMonotonicity) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> mu(0.0, 3e4), nr(1.2, 3.5), ni(0.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const RefractiveIndex n{nr(gen), ni(gen)};
    const double m = mu(gen);
    std::vector<ScattererPopulation> pops{{"a", 5e-6, 1e14, {1.1, 0.01}, n.n_real},
                                          {"b", 40e-6, 1e12, {0.9, 0.02}, n.n_real}};
    double prev = -1.0;
    for (int k = 0; k <= 10; ++k) {
      PropagationConfig cfg{trial % 2 ? 1e12 : 1e11, k * 0.5e-3, 1.0, n};
      const auto l = total_loss(cfg, m, pops);
      const double product = l.spreading.factor * l.absorption.factor * l.scattering.factor;
      EXPECT_LE(std::abs(l.total.factor - product), 1e-12 * product);
      EXPECT_LE(std::abs(l.total.db - (l.spreading.db + l.absorption.db + l.scattering.db)), 1e-9);
      EXPECT_GE(l.total.db, prev);
      prev = l.total.db;
      for (const auto* t : {&l.spreading, &l.absorption, &l.scattering}) {
        EXPECT_GT(t->factor, 0.0);
        EXPECT_LE(t->factor, 1.0);
        EXPECT_GE(t->db, 0.0);
      }
    }
  }
}

TEST(Total, LosslessAtUnitDistanceIsZero) {
  const double lg = guided_wavelength(1e11, 1.0);
  const auto l = total_loss({1e11, lg / (4 * kPi), 1.0, {1.0, 0.0}}, 0.0, {});
  EXPECT_NEAR(l.total.db, 0.0, 1e-9);
}
