#!/usr/bin/env python3
"""Arbitrary-precision reference values for the dielectric and loss formulas.

Straight-line evaluation with mpmath at 50 significant digits. The parameter
values are typed in here by hand from the source tables and do not go through
the C++ catalog. Regenerate tests/golden_values.hpp with:

    python3 tests/oracle/golden.py > tests/golden_values.hpp
"""
from mpmath import mp, mpf, mpc, pi, sqrt, exp, sin, cos, log10

mp.dps = 50
C0 = mpf(299792458)

# (eps_inf, [(delta_eps, tau_seconds), ...]) with range midpoints
WATER = (mpf("1.8"), [(mpf(78), mpf("8.3e-12"))])
PROTEIN = (mpf("2.25"), [(mpf(30), mpf("50.5e-12")),
                         (mpf(3), mpf("5.05e-12")),
                         (mpf("1.25"), mpf("0.055e-12"))])
LIPID = (mpf("2.1"), [(mpf(2), mpf("0.55e-12")),
                      (mpf("0.6"), mpf("0.03e-12"))])

# (protein, lipid) midpoints; water is the residual
MIXTURES = {
    "corneocytes": ("0.75", "0.125"),
    "granular_keratinocytes": ("0.225", "0.04"),
    "spinous_keratinocytes": ("0.175", "0.025"),
    "basal_keratinocytes": ("0.175", "0.025"),
    "langerhans_cells": ("0.225", "0.04"),
    "melanocytes": ("0.175", "0.025"),
    "red_blood_cells": ("0.30", "0.015"),
    "fibroblasts": ("0.175", "0.025"),
    "adipocytes": ("0.075", "0.775"),
    "ecm_epidermis": ("0.275", "0.05"),
    "ecm_dermis": ("0.25", "0.02"),
    "ecm_hypodermis": ("0.075", "0.675"),
}


def debye(params, f):
    eps_inf, branches = params
    w = 2 * pi * f
    eps = mpc(eps_inf, 0)
    for d, tau in branches:
        eps = eps + d / (1 + mpc(0, 1) * w * tau)
    return eps  # eps' - j eps''


def maxwell_garnett(host, incs):
    s = mpc(0)
    for e, phi in incs:
        s = s + phi * (e - host) / (e + 2 * host)
    return host + 3 * host * s / (1 - s)


def index(eps):
    r = sqrt(eps)  # principal root; Re > 0, Im <= 0 for eps'' >= 0
    return r.real, -r.imag


def fmt(x):
    return mp.nstr(x, 20, min_fixed=-5, max_fixed=5, strip_zeros=False)


def main():
    out = []
    out.append("// Generated by tests/oracle/golden.py (mpmath, 50 digits). Do not edit.")
    out.append("#pragma once")
    out.append("")
    out.append("namespace golden {")
    out.append("")
    out.append("struct PermittivityRow { const char* id; double f_hz; double eps_real; double eps_imag; double n_real; double n_imag; double mu_abs; };")
    out.append("")
    out.append("inline constexpr PermittivityRow kRows[] = {")
    freqs = [mpf("1e11"), mpf("1e12")]
    for f in freqs:
        rows = [("water", debye(WATER, f)), ("protein", debye(PROTEIN, f)),
                ("lipid", debye(LIPID, f))]
        host = debye(WATER, f)
        p_eps = debye(PROTEIN, f)
        l_eps = debye(LIPID, f)
        for name, (pf, lf) in MIXTURES.items():
            rows.append((name, maxwell_garnett(host, [(p_eps, mpf(pf)), (l_eps, mpf(lf))])))
        for name, eps in rows:
            nr, ni = index(eps)
            mu = 4 * pi * ni * nr * f / C0
            out.append(f'    {{"{name}", {fmt(f)}, {fmt(eps.real)}, {fmt(-eps.imag)}, {fmt(nr)}, {fmt(ni)}, {fmt(mu)}}},')
    out.append("};")
    out.append("")

    # Loss-side scalars.
    p = pi
    q_ext_pi = 2 - 4 / p * sin(p) + 4 / p**2 * (1 - cos(p))
    b = mpf(1)
    q_abs_1 = 1 + 2 / b * exp(-b) + 2 / b**2 * (exp(-b) - 1)
    n = mpf("1.5")
    ratio = (n**2 - 1) / (n**2 + 2)
    q_ray = mpf(8) / 3 * mpf("0.1")**4 * ratio**2
    # spreading for pure water at 100 GHz, 5 mm, D = 1
    nr_w, _ = index(debye(WATER, mpf("1e11")))
    lam_g = C0 / (mpf("1e11") * nr_w)
    spr_db = 20 * log10(4 * pi * mpf("5e-3") / lam_g)
    abs_db = 10 * mpf("1.5") / mp.log(10)
    sca_db = 10 * mpf("0.5") / mp.log(10)
    mu_small = mpf("1e12") * mpf("2.3e-5") * pi * mpf("5e-6")**2
    out.append(f"inline constexpr double kQextPi = {fmt(q_ext_pi)};")
    out.append(f"inline constexpr double kQabsOne = {fmt(q_abs_1)};")
    out.append(f"inline constexpr double kRayleighPsi01N15 = {fmt(q_ray)};")
    out.append(f"inline constexpr double kWaterSpreading100GHz5mmDb = {fmt(spr_db)};")
    out.append(f"inline constexpr double kAbsorption300PerM5mmDb = {fmt(abs_db)};")
    out.append(f"inline constexpr double kScattering100PerM5mmDb = {fmt(sca_db)};")
    out.append(f"inline constexpr double kMuSmallExample = {fmt(mu_small)};")
    out.append("")
    out.append("}  // namespace golden")
    print("\n".join(out))


if __name__ == "__main__":
    main()
