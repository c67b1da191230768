#pragma once

// Path-loss factorization L_tot = L_spr * L_abs * L_sca with the
// anomalous-diffraction (large) and Rayleigh (small) scattering regimes.
// Loss factors are in (0, 1]; dB values are positive losses, -10 log10(L).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dermawave/constants.hpp"
#include "dermawave/dielectrics.hpp"
#include "dermawave/errors.hpp"

namespace dermawave {

inline constexpr double kNepersToDb = 10.0 / std::numbers::ln10;

struct PropagationConfig {
  double frequency = 1e11;  // Hz
  double distance = 0.0;    // m
  double directivity = 1.0;
  RefractiveIndex medium_index{};

  void validate() const {
    if (!(frequency > 0.0) || !std::isfinite(frequency))
      throw DomainError("frequency must be positive");
    if (!(distance >= 0.0) || !std::isfinite(distance))
      throw DomainError("distance must be >= 0");
    if (!(directivity >= 1.0)) throw DomainError("directivity must be >= 1");
    if (!(medium_index.n_real > 0.0)) throw DomainError("medium n' must be > 0");
  }
};

// Free-space wavelength divided by n'.
inline double guided_wavelength(double f_hz, double n_real) {
  return kSpeedOfLight / (f_hz * n_real);
}

// Size parameter 2 pi r / lambda_g.
inline double size_parameter(double radius, double f_hz, double n_real) {
  return 2.0 * kPi * radius / guided_wavelength(f_hz, n_real);
}

// A loss stored both as a linear factor and in dB.
struct LossTerm {
  double factor = 1.0;
  double db = 0.0;

  static LossTerm from_factor(double f) { return {f, -10.0 * std::log10(f)}; }
  // exp(-optical_depth), with the dB value taken from the exponent directly.
  static LossTerm from_optical_depth(double tau) { return {std::exp(-tau), tau * kNepersToDb}; }
};

struct LossBreakdown {
  LossTerm spreading;
  LossTerm absorption;
  LossTerm scattering;
  LossTerm total;

  static LossBreakdown combine(LossTerm spr, LossTerm abs, LossTerm sca) {
    return {spr, abs, sca,
            {spr.factor * abs.factor * sca.factor, spr.db + abs.db + sca.db}};
  }
};

// L_spr = D (lambda_g / (4 pi d))^2. d = 0 is defined as no loss. Inside
// d < sqrt(D) lambda_g / (4 pi) the far-field expression exceeds 1 and is
// clamped to 1.
inline LossTerm spreading_loss(const PropagationConfig& cfg) {
  cfg.validate();
  if (cfg.distance == 0.0) return {1.0, 0.0};
  const double lg = guided_wavelength(cfg.frequency, cfg.medium_index.n_real);
  const double ratio = lg / (4.0 * kPi * cfg.distance);
  const double factor = cfg.directivity * ratio * ratio;
  if (factor >= 1.0) return {1.0, 0.0};
  return LossTerm::from_factor(factor);
}

// mu_abs = 4 pi n'' / lambda_g = 4 pi n'' n' f / c, in 1/m.
inline double absorption_coefficient(const RefractiveIndex& n, double f_hz) {
  if (!(f_hz > 0.0)) throw DomainError("frequency must be positive");
  return 4.0 * kPi * n.n_imag * n.n_real * f_hz / kSpeedOfLight;
}

// Beer-Lambert e^{-mu d}.
inline LossTerm absorption_loss(double mu_abs, double distance) {
  if (!(mu_abs >= 0.0)) throw DomainError("absorption coefficient must be >= 0");
  if (!(distance >= 0.0)) throw DomainError("distance must be >= 0");
  return LossTerm::from_optical_depth(mu_abs * distance);
}

// Anomalous-diffraction extinction efficiency
//   Q_ext = 2 - (4/p) sin p + (4/p^2)(1 - cos p).
inline double extinction_efficiency(double p) {
  if (!(p >= 0.0)) throw DomainError("phase delay must be >= 0");
  if (p < 1e-3) {
    // p^2/2 - p^4/36 + p^6/1440
    const double p2 = p * p;
    return p2 * (0.5 - p2 * (1.0 / 36.0 - p2 / 1440.0));
  }
  const double half = std::sin(0.5 * p);
  return 2.0 - 4.0 / p * std::sin(p) + 8.0 * half * half / (p * p);
}

// Anomalous-diffraction absorption efficiency
//   Q_abs = 1 + (2/b) e^{-b} + (2/b^2)(e^{-b} - 1),  b = 4 psi n''.
inline double absorption_efficiency(double b) {
  if (!(b >= 0.0)) throw DomainError("absorption thickness must be >= 0");
  double q;
  if (b < 1e-3) {
    // 2b/3 - b^2/4 + b^3/15
    q = b * (2.0 / 3.0 - b * (0.25 - b / 15.0));
  } else {
    const double e = std::exp(-b);
    q = 1.0 + 2.0 / b * e + 2.0 / (b * b) * std::expm1(-b);
  }
  return std::clamp(q, 0.0, 1.0);
}

// Rayleigh efficiency (8/3) psi^4 Re[((n^2 - 1)/(n^2 + 2))^2], floored at 0.
inline double rayleigh_efficiency(double psi, const RefractiveIndex& n) {
  if (!(psi >= 0.0)) throw DomainError("size parameter must be >= 0");
  const std::complex<double> m = n.as_complex();
  const std::complex<double> m2 = m * m;
  const std::complex<double> denom = m2 + 2.0;
  if (std::abs(denom) == 0.0) throw SingularityError("n^2 + 2 vanishes");
  const std::complex<double> ratio = (m2 - 1.0) / denom;
  const double psi2 = psi * psi;
  const double q = 8.0 / 3.0 * psi2 * psi2 * (ratio * ratio).real();
  return q > 0.0 ? q : 0.0;
}

enum class ScatteringRegime { small, large };

// One scatterer species inside a background medium.
struct ScattererPopulation {
  std::string species;
  double radius = 0.0;          // m
  double number_density = 0.0;  // 1/m^3
  RefractiveIndex index{};      // particle index relative to the medium
  double medium_n_real = 1.0;   // sets lambda_g for the size parameter

  double size_parameter(double f_hz) const {
    return dermawave::size_parameter(radius, f_hz, medium_n_real);
  }
  // Large iff psi >= 1 at the operating frequency.
  ScatteringRegime regime(double f_hz) const {
    return size_parameter(f_hz) >= 1.0 ? ScatteringRegime::large : ScatteringRegime::small;
  }
  // Regime-resolved scattering efficiency.
  double efficiency(double f_hz) const {
    const double psi = size_parameter(f_hz);
    if (psi < 1.0) return rayleigh_efficiency(psi, index);
    // Q_ext is even in p; |p| keeps sub-unity contrast well defined.
    const double p = std::abs(2.0 * (index.n_real - 1.0) * psi);
    // A particle less lossy than its medium absorbs nothing extra.
    const double b = std::max(4.0 * psi * index.n_imag, 0.0);
    return std::max(extinction_efficiency(p) - absorption_efficiency(b), 0.0);
  }
};

// Index of a particle relative to its background, n_particle / n_medium.
inline RefractiveIndex relative_index(const RefractiveIndex& particle,
                                      const RefractiveIndex& medium) {
  return RefractiveIndex::from_complex(particle.as_complex() / medium.as_complex());
}

struct ScatteringCoefficients {
  double small = 0.0;  // 1/m
  double large = 0.0;  // 1/m

  double sum() const { return small + large; }
};

// mu = sum rho Q pi r^2, split by regime.
inline ScatteringCoefficients scattering_coefficients(
    std::span<const ScattererPopulation> pops, double f_hz) {
  ScatteringCoefficients out;
  for (const auto& pop : pops) {
    if (!(pop.radius > 0.0)) throw DomainError("scatterer radius must be > 0");
    if (!(pop.number_density >= 0.0)) throw DomainError("number density must be >= 0");
    const double mu = pop.number_density * pop.efficiency(f_hz) * kPi * pop.radius * pop.radius;
    (pop.regime(f_hz) == ScatteringRegime::large ? out.large : out.small) += mu;
  }
  return out;
}

inline LossTerm scattering_loss(double mu_small, double mu_large, double distance) {
  if (!(mu_small >= 0.0) || !(mu_large >= 0.0))
    throw DomainError("scattering coefficients must be >= 0");
  if (!(distance >= 0.0)) throw DomainError("distance must be >= 0");
  return LossTerm::from_optical_depth((mu_small + mu_large) * distance);
}

// Homogeneous-medium link budget.
inline LossBreakdown total_loss(const PropagationConfig& cfg, double mu_abs,
                                std::span<const ScattererPopulation> pops) {
  cfg.validate();
  const auto sca = scattering_coefficients(pops, cfg.frequency);
  return LossBreakdown::combine(spreading_loss(cfg), absorption_loss(mu_abs, cfg.distance),
                                scattering_loss(sca.small, sca.large, cfg.distance));
}

}  // namespace dermawave
