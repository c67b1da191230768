// Permittivity and absorption of the tissue constituents from 100 GHz to 1 THz.

#include <iostream>

#include "dermawave/dielectrics.hpp"
#include "dermawave/losses.hpp"
#include "dermawave/materials.hpp"

int main() {
  using namespace dermawave;
  const auto& cat = builtin_catalog();
  std::cout << "material,f_ghz,eps_real,eps_imag,n_real,n_imag,mu_abs_per_mm\n";
  auto row = [](const std::string& name, double f, const ComplexPermittivity& eps) {
    const auto n = refractive_index(eps);
    std::cout << name << ',' << format_number(f / 1e9) << ',' << format_number(eps.eps_real) << ','
              << format_number(eps.eps_imag) << ',' << format_number(n.n_real) << ','
              << format_number(n.n_imag) << ',' << format_number(absorption_coefficient(n, f) * 1e-3)
              << '\n';
  };
  for (int step = 1; step <= 10; ++step) {
    const double f = step * 1e11;
    for (const auto& c : cat.components()) row(c.id, f, debye_permittivity(c.params, f));
    for (const auto& layer : cat.layers())
      row("ecm_" + layer.id, f, mixture_permittivity(layer.ecm, f, cat));
  }
}
