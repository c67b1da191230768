#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "dermawave/dielectrics.hpp"
#include "dermawave/log.hpp"
#include "dermawave/materials.hpp"
#include "golden_values.hpp"

using namespace dermawave;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Silences the out-of-band warning for tests that sweep past 1 THz.
struct QuietWarnings {
  std::vector<std::string> seen;
  WarningHandler previous;
  QuietWarnings() { previous = set_warning_handler([this](const std::string& m) { seen.push_back(m); }); }
  ~QuietWarnings() { set_warning_handler(previous); }
};

DebyeParameters water() { return builtin_catalog().component_params("water"); }

}  // namespace

TEST(Debye, WaterGoldenAt100GHzAnd1THz) {
  for (double f : {1e11, 1e12}) {
    const auto eps = debye_permittivity(water(), f);
    for (const auto& row : golden::kRows) {
      if (std::string(row.id) != "water" || row.f_hz != f) continue;
      EXPECT_LT(rel(eps.eps_real, row.eps_real), 1e-9);
      EXPECT_LT(rel(eps.eps_imag, row.eps_imag), 1e-9);
    }
  }
  // ωτ at 100 GHz for τ = 8.3 ps
  EXPECT_NEAR(2 * kPi * 1e11 * 8.3e-12, 5.215, 1e-3);
}

TEST(Debye, NoRelaxationIsFlat) {
  DebyeParameters p;
  p.eps_inf = 2.5;
  p.branch(Relaxation::beta) = DebyeBranch{0.0, 1e-12};
  for (double f : {1e11, 3e11, 1e12}) {
    const auto eps = debye_permittivity(p, f);
    EXPECT_EQ(eps.eps_real, 2.5);
    EXPECT_EQ(eps.eps_imag, 0.0);
  }
}

TEST(Debye, HighAndLowFrequencyLimits) {
  QuietWarnings quiet;
  const auto p = water();
  const auto hi = debye_permittivity(p, 1e20);
  EXPECT_LT(rel(hi.eps_real, p.eps_inf), 1e-9);
  EXPECT_LT(hi.eps_imag, 1e-6);
  const auto lo = debye_permittivity(p, 1.0);
  EXPECT_LT(rel(lo.eps_real, p.eps_inf + 78.0), 1e-9);
  EXPECT_FALSE(quiet.seen.empty());
}

TEST(Debye, SingleBranchShape) {
  QuietWarnings quiet;
  const auto p = water();
  const double tau = p.branch(Relaxation::alpha)->tau;
  double prev_real = INFINITY;
  double best_f = 0.0, best_imag = -1.0;
  for (int i = 0; i <= 400; ++i) {
    const double f = std::pow(10.0, 8.0 + 6.0 * i / 400.0);
    const auto eps = debye_permittivity(p, f);
    EXPECT_LT(eps.eps_real, prev_real);
    prev_real = eps.eps_real;
    if (eps.eps_imag > best_imag) {
      best_imag = eps.eps_imag;
      best_f = f;
    }
  }
  // Peak at ωτ = 1 (to grid resolution) with height Δε/2.
  EXPECT_NEAR(2 * kPi * best_f * tau, 1.0, 0.05);
  EXPECT_NEAR(best_imag, 39.0, 0.05);
}

TEST(Debye, RejectsNonPositiveFrequency) {
  EXPECT_THROW(debye_permittivity(water(), 0.0), DomainError);
  EXPECT_THROW(debye_permittivity(water(), -1e11), DomainError);
  EXPECT_THROW(debye_permittivity(water(), NAN), DomainError);
}

TEST(Debye, WarnsOnceOutsideValidityBand) {
  QuietWarnings quiet;
  debye_permittivity(water(), 5e10);
  debye_permittivity(water(), 5e10);
  debye_permittivity(water(), 5e11);
  EXPECT_EQ(quiet.seen.size(), 1u);
}

TEST(MaxwellGarnett, ZeroFractionsReturnHost) {
  const ComplexPermittivity host{4.5, 14.4};
  const auto out = maxwell_garnett(host, {{{2.0, 0.1}, 0.0}, {{3.0, 0.5}, 0.0}});
  EXPECT_EQ(out.eps_real, host.eps_real);
  EXPECT_EQ(out.eps_imag, host.eps_imag);
  EXPECT_EQ(maxwell_garnett(host, {}).eps_real, host.eps_real);
}

TEST(MaxwellGarnett, ZeroContrastReturnsHost) {
  const ComplexPermittivity host{4.5, 14.4};
  for (double phi : {0.1, 0.5, 0.9}) {
    const auto out = maxwell_garnett(host, {{host, phi}});
    EXPECT_LT(rel(out.eps_real, host.eps_real), 1e-12);
    EXPECT_LT(rel(out.eps_imag, host.eps_imag), 1e-12);
  }
}

TEST(MaxwellGarnett, CompositionErrors) {
  const ComplexPermittivity host{4.5, 14.4};
  EXPECT_THROW(maxwell_garnett(host, {{{2.0, 0.0}, 0.6}, {{3.0, 0.0}, 0.4}}), CompositionError);
  EXPECT_THROW(maxwell_garnett(host, {{{2.0, 0.0}, -0.1}}), CompositionError);
}

TEST(MaxwellGarnett, SingularityGuard) {
  // ε_n = −2 ε_host
  EXPECT_THROW(maxwell_garnett({1.0, 0.0}, {{{-2.0, 0.0}, 0.1}}), SingularityError);
}

TEST(MaxwellGarnett, LosslessTwoPhaseIsBracketed) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> e(1.0, 80.0), phi(0.01, 0.99);
  for (int i = 0; i < 2000; ++i) {
    const double eh = e(gen), en = e(gen), f = phi(gen);
    const auto out = maxwell_garnett({eh, 0.0}, {{{en, 0.0}, f}});
    EXPECT_GE(out.eps_real, std::min(eh, en) * (1 - 1e-12));
    EXPECT_LE(out.eps_real, std::max(eh, en) * (1 + 1e-12));
  }
}

TEST(MaxwellGarnett, PassiveInputsStayPassive) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> re(1.5, 80.0), im(0.0, 40.0), phi(0.0, 0.45);
  for (int i = 0; i < 5000; ++i) {
    const auto out = maxwell_garnett({re(gen), im(gen)},
                                     {{{re(gen), im(gen)}, phi(gen)}, {{re(gen), im(gen)}, phi(gen)}});
    EXPECT_GE(out.eps_imag, 0.0);
  }
}

TEST(MaxwellGarnett, ContinuousInFraction) {
  const ComplexPermittivity host{4.57, 14.43}, inc{3.8, 1.85};
  for (double phi : {0.1, 0.4, 0.8}) {
    const auto a = maxwell_garnett(host, {{inc, phi}});
    const auto b = maxwell_garnett(host, {{inc, phi + 1e-9}});
    EXPECT_LT(std::abs(a.as_complex() - b.as_complex()), 1e-6);
  }
}

TEST(RefractiveIndex, KnownValues) {
  auto n = refractive_index({1.0, 0.0});
  EXPECT_EQ(n.n_real, 1.0);
  EXPECT_EQ(n.n_imag, 0.0);
  n = refractive_index({0.0, 2.0});
  EXPECT_NEAR(n.n_real, 1.0, 1e-15);
  EXPECT_NEAR(n.n_imag, 1.0, 1e-15);
  const auto& w = golden::kRows[0];
  n = refractive_index({w.eps_real, w.eps_imag});
  EXPECT_LT(rel(n.n_real, w.n_real), 1e-12);
  EXPECT_LT(rel(n.n_imag, w.n_imag), 1e-12);
}

TEST(RefractiveIndex, SquareRoundTrip) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> re(-50.0, 100.0), im(0.0, 60.0);
  for (int i = 0; i < 10000; ++i) {
    const ComplexPermittivity eps{re(gen), im(gen)};
    const auto n = refractive_index(eps);
    EXPECT_GT(n.n_real, 0.0);
    EXPECT_GE(n.n_imag, 0.0);
    const auto sq = n.as_complex() * n.as_complex();
    EXPECT_LT(std::abs(sq - eps.as_complex()) / std::abs(eps.as_complex()), 1e-12);
  }
}

TEST(Mixture, NoInclusionsEqualsHost) {
  const MixtureComposition comp{"water", {}};
  const auto a = mixture_permittivity(comp, 1e11, builtin_catalog());
  const auto b = debye_permittivity(water(), 1e11);
  EXPECT_EQ(a.eps_real, b.eps_real);
  EXPECT_EQ(a.eps_imag, b.eps_imag);
}

TEST(Mixture, UnknownComponentIsCatalogError) {
  const MixtureComposition comp{"water", {{"chitin", 0.1}}};
  EXPECT_THROW(mixture_permittivity(comp, 1e11, builtin_catalog()), CatalogError);
}

TEST(Mixture, AllGoldenRows) {
  const auto& cat = builtin_catalog();
  for (const auto& row : golden::kRows) {
    const std::string id = row.id;
    ComplexPermittivity eps;
    if (cat.has_component(id)) {
      eps = debye_permittivity(cat.component_params(id), row.f_hz);
    } else if (cat.has_cell(id)) {
      eps = mixture_permittivity(cat.cell_species(id).composition, row.f_hz, cat);
    } else {
      ASSERT_EQ(id.rfind("ecm_", 0), 0u) << id;
      eps = mixture_permittivity(cat.ecm_composition(id.substr(4)), row.f_hz, cat);
    }
    const auto n = refractive_index(eps);
    SCOPED_TRACE(id + " @ " + std::to_string(row.f_hz));
    EXPECT_LT(rel(eps.eps_real, row.eps_real), 1e-9);
    EXPECT_LT(rel(eps.eps_imag, row.eps_imag), 1e-9);
    EXPECT_LT(rel(n.n_real, row.n_real), 1e-9);
    EXPECT_LT(rel(n.n_imag, row.n_imag), 1e-9);
  }
}

TEST(Mixture, AdipocyteLessLossyThanFibroblast) {
  const auto& cat = builtin_catalog();
  for (double f : {1e11, 1e12}) {
    const auto a = mixture_permittivity(cat.cell_species("adipocytes").composition, f, cat);
    const auto b = mixture_permittivity(cat.cell_species("fibroblasts").composition, f, cat);
    EXPECT_LT(a.eps_imag, b.eps_imag);
  }
}
