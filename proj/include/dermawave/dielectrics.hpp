#pragma once

// Multi-Debye relaxation, Maxwell-Garnett mixing and the complex refractive
// index. Sign convention throughout: eps = eps' - j eps'', n = n' - j n'',
// with eps'' and n'' stored as non-negative loss magnitudes.

#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dermawave/constants.hpp"
#include "dermawave/errors.hpp"
#include "dermawave/log.hpp"

namespace dermawave {

using ComponentId = std::string;

struct ComplexPermittivity {
  double eps_real = 1.0;
  double eps_imag = 0.0;  // loss magnitude

  // Engineering form eps' - j eps''.
  std::complex<double> as_complex() const { return {eps_real, -eps_imag}; }
  static ComplexPermittivity from_complex(std::complex<double> z) { return {z.real(), -z.imag()}; }

  friend bool operator==(const ComplexPermittivity&, const ComplexPermittivity&) = default;
};

struct RefractiveIndex {
  double n_real = 1.0;
  double n_imag = 0.0;  // extinction magnitude

  std::complex<double> as_complex() const { return {n_real, -n_imag}; }
  static RefractiveIndex from_complex(std::complex<double> z) { return {z.real(), -z.imag()}; }

  friend bool operator==(const RefractiveIndex&, const RefractiveIndex&) = default;
};

enum class Relaxation { alpha = 0, beta = 1, gamma = 2 };

inline constexpr std::array<Relaxation, 3> kRelaxations{Relaxation::alpha, Relaxation::beta,
                                                        Relaxation::gamma};

inline const char* relaxation_name(Relaxation r) {
  switch (r) {
    case Relaxation::alpha: return "alpha";
    case Relaxation::beta: return "beta";
    case Relaxation::gamma: return "gamma";
  }
  return "?";
}

struct DebyeBranch {
  double delta_eps = 0.0;
  double tau = 0.0;  // seconds

  friend bool operator==(const DebyeBranch&, const DebyeBranch&) = default;
};

// High-frequency permittivity plus up to three relaxation branches. A branch
// that does not exist for a material is std::nullopt, never a zero tau.
struct DebyeParameters {
  double eps_inf = 1.0;
  std::array<std::optional<DebyeBranch>, 3> branches{};

  const std::optional<DebyeBranch>& branch(Relaxation r) const {
    return branches[static_cast<std::size_t>(r)];
  }
  std::optional<DebyeBranch>& branch(Relaxation r) { return branches[static_cast<std::size_t>(r)]; }

  // Strength of a branch; an absent branch contributes nothing.
  double delta_eps(Relaxation r) const { return branch(r) ? branch(r)->delta_eps : 0.0; }

  // Human-readable invariant violations, prefixed with `prefix.`.
  std::vector<std::string> violations(const std::string& prefix) const {
    std::vector<std::string> out;
    if (!(eps_inf >= 1.0)) out.push_back(prefix + ".eps_inf must be >= 1");
    for (auto r : kRelaxations) {
      const auto& b = branch(r);
      if (!b) continue;
      if (!(b->delta_eps >= 0.0))
        out.push_back(prefix + ".delta_eps_" + relaxation_name(r) + " must be >= 0");
      if (!(b->tau > 0.0)) out.push_back(prefix + ".tau_" + relaxation_name(r) + " must be > 0");
    }
    return out;
  }

  friend bool operator==(const DebyeParameters&, const DebyeParameters&) = default;
};

struct Inclusion {
  ComponentId component;
  double volume_fraction = 0.0;

  friend bool operator==(const Inclusion&, const Inclusion&) = default;
};

// Host medium with dispersed inclusions. Mass fractions are used directly as
// volume fractions (equal-density assumption).
struct MixtureComposition {
  ComponentId host = "water";
  std::vector<Inclusion> inclusions;

  double inclusion_fraction() const {
    return std::accumulate(inclusions.begin(), inclusions.end(), 0.0,
                           [](double acc, const Inclusion& i) { return acc + i.volume_fraction; });
  }
  double host_fraction() const { return 1.0 - inclusion_fraction(); }

  // Volume fraction of `id`, counting the host.
  double fraction_of(const ComponentId& id) const {
    double f = id == host ? host_fraction() : 0.0;
    for (const auto& i : inclusions)
      if (i.component == id) f += i.volume_fraction;
    return f;
  }

  std::vector<std::string> violations(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& i : inclusions)
      if (!(i.volume_fraction >= 0.0 && i.volume_fraction <= 1.0))
        out.push_back(prefix + "." + i.component + "_frac must lie in [0, 1]");
    if (!(host_fraction() > 0.0))
      out.push_back(prefix + ": inclusion fractions must sum to less than 1");
    return out;
  }

  friend bool operator==(const MixtureComposition&, const MixtureComposition&) = default;
};

inline bool in_validity_band(double f_hz) {
  return f_hz >= kValidBandLowHz && f_hz <= kValidBandHighHz;
}

namespace detail {

inline void check_frequency(double f_hz) {
  if (!(f_hz > 0.0) || !std::isfinite(f_hz))
    throw DomainError("frequency must be positive and finite, got " + std::to_string(f_hz));
  if (!in_validity_band(f_hz))
    warn_once("frequency " + std::to_string(f_hz) +
              " Hz is outside the 100 GHz - 1 THz band of the relaxation parameters");
}

}  // namespace detail

// eps*(w) = eps_inf + sum_k delta_eps_k / (1 + j w tau_k), returned in the
// eps' - j eps'' convention.
inline ComplexPermittivity debye_permittivity(const DebyeParameters& params, double f_hz) {
  detail::check_frequency(f_hz);
  const double omega = 2.0 * kPi * f_hz;
  // 1 / (1 + j x) = (1 - j x) / (1 + x^2)
  double eps_real = params.eps_inf;
  double eps_imag = 0.0;
  for (const auto& b : params.branches) {
    if (!b) continue;
    const double x = omega * b->tau;
    const double denom = 1.0 + x * x;
    eps_real += b->delta_eps / denom;
    eps_imag += b->delta_eps * x / denom;
  }
  return {eps_real, eps_imag};
}

// Effective permittivity of spherical inclusions dispersed in a host:
//   eps = eps_h + 3 eps_h S / (1 - S),  S = sum_n phi_n (eps_n - eps_h) / (eps_n + 2 eps_h)
inline ComplexPermittivity maxwell_garnett(
    const ComplexPermittivity& host,
    std::span<const std::pair<ComplexPermittivity, double>> inclusions) {
  double total = 0.0;
  for (const auto& [eps, phi] : inclusions) {
    if (!(phi >= 0.0)) throw CompositionError("inclusion volume fraction must be >= 0");
    total += phi;
  }
  if (!(total < 1.0))
    throw CompositionError("inclusion volume fractions sum to " + std::to_string(total) +
                           ", must be < 1");

  const std::complex<double> eh = host.as_complex();
  std::complex<double> s{0.0, 0.0};
  for (const auto& [eps, phi] : inclusions) {
    if (phi == 0.0) continue;
    const std::complex<double> en = eps.as_complex();
    const std::complex<double> denom = en + 2.0 * eh;
    if (denom == 0.0) throw SingularityError("eps_n + 2 eps_host vanishes");
    s += phi * (en - eh) / denom;
  }
  if (s == 1.0) throw SingularityError("Maxwell-Garnett polarizability sum equals 1");
  return ComplexPermittivity::from_complex(eh + 3.0 * eh * s / (1.0 - s));
}

inline ComplexPermittivity maxwell_garnett(
    const ComplexPermittivity& host,
    std::initializer_list<std::pair<ComplexPermittivity, double>> inclusions) {
  return maxwell_garnett(host, std::span<const std::pair<ComplexPermittivity, double>>(
                                   inclusions.begin(), inclusions.size()));
}

// Principal square root. For eps'' >= 0 this lands in n' > 0, n'' >= 0.
inline RefractiveIndex refractive_index(const ComplexPermittivity& eps) {
  // Half-angle form avoids cancellation in n'' when |eps| ~ eps'.
  const double mag = std::hypot(eps.eps_real, eps.eps_imag);
  if (eps.eps_real >= 0.0) {
    const double nr = std::sqrt(0.5 * (mag + eps.eps_real));
    const double ni = nr > 0.0 ? eps.eps_imag / (2.0 * nr) : 0.0;
    return {nr, ni};
  }
  const double ni = std::sqrt(0.5 * (mag - eps.eps_real));
  return {eps.eps_imag / (2.0 * ni), ni};
}

// Evaluates each component with the Debye model and mixes them. `lookup` maps a
// component id to its DebyeParameters and throws CatalogError on unknown ids.
template <class ComponentLookup>
ComplexPermittivity mixture_permittivity(const MixtureComposition& comp, double f_hz,
                                         const ComponentLookup& lookup) {
  const ComplexPermittivity host = debye_permittivity(lookup(comp.host), f_hz);
  std::vector<std::pair<ComplexPermittivity, double>> parts;
  parts.reserve(comp.inclusions.size());
  for (const auto& inc : comp.inclusions)
    parts.emplace_back(debye_permittivity(lookup(inc.component), f_hz), inc.volume_fraction);
  return maxwell_garnett(host, parts);
}

}  // namespace dermawave
