"""Compute the reference values frozen into tests/oracles.py.

One-dimensional references use mpmath quadrature or direct series summation at
30 significant digits; the double integrals use nested scipy quad at 1e-13
relative tolerance with scipy's own K0. Nothing here imports secrecy_lab.

    python scripts/freeze_oracles.py
"""

import mpmath as mp
import numpy as np
from scipy import integrate, special

mp.mp.dps = 30

BETA = mp.mpf("2.7")


def k0_integral(x):
    # The integrand peaks at t = 0 with width ~ 1/sqrt(x); split on that scale.
    w = 1 / mp.sqrt(x)
    pts = [p for p in [0] + [c * w for c in (0.5, 1, 2, 4, 8, 16, 32)] if p < 6] + [6]
    return mp.exp(-x) * mp.quad(lambda t: mp.exp(-x * (mp.cosh(t) - 1)), pts)


def series(coef, x, terms=10_000):
    total, term = mp.mpf(0), mp.mpf(1)
    for n in range(terms):
        total += term
        term *= coef(n) * x
        if abs(term) < mp.mpf(10) ** -40:
            break
    return total


def hyp2f1_series(a, b, c, x):
    return series(lambda n: (a + n) * (b + n) / ((c + n) * (n + 1)), x)


def hyp3f2_series(a1, a2, a3, b1, b2, x):
    return series(
        lambda n: (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1)), x
    )


def gain_pdf(g):
    return g * mp.besselk(0, g) if g > 0 else mp.mpf(0)


def psi_2d(z, radius, beta):
    """E[exp(-z g r^-beta)] by nested quadrature of the defining double integral."""

    def inner(g):
        f = lambda r: np.exp(-z * g * r ** (-beta)) * 2 * r / radius**2
        return integrate.quad(f, 0, radius, epsabs=0, epsrel=1e-13, limit=500)[0]

    outer = lambda g: g * special.k0(g) * inner(g) if g > 0 else 0.0
    return integrate.quad(outer, 0, 45, points=[1, 4, 12], epsabs=0, epsrel=1e-13, limit=500)[0]


def main_link(s):
    return mp.quad(lambda g: mp.exp(-s * g) * g * mp.besselk(0, g), [0, 1, 5, mp.inf])


class _Printer(dict):
    def __setitem__(self, key, val):
        print(f"{key.upper()} = {mp.nstr(mp.mpf(val), 17)}", flush=True)


def main():
    a = 1 - 2 / BETA
    out = _Printer()
    out["gammainc_a_beta27_x1"] = mp.quad(lambda t: t ** (a - 1) * mp.exp(-t), [1, 10, mp.inf])
    out["k0_1"] = k0_integral(mp.mpf(1))
    out["k0_100"] = k0_integral(mp.mpf(100))
    out["k0_2"] = k0_integral(mp.mpf(2))
    out["hyp2f1_2_05_25_05"] = hyp2f1_series(2, mp.mpf("0.5"), mp.mpf("2.5"), mp.mpf("0.5"))
    out["hyp3f2_psi_even_beta27_x025"] = hyp3f2_series(
        mp.mpf("1.5"), mp.mpf("1.5"), mp.mpf("0.5") - 1 / BETA,
        mp.mpf("0.5"), mp.mpf("1.5") - 1 / BETA, mp.mpf("0.25"),
    )
    out["inner_z1_g1_R20_b27"] = mp.quad(
        lambda r: mp.exp(-r ** (-BETA)) * 2 * r / 400, [0, 1, 20]
    )
    out["psi_z1_R20_b27"] = psi_2d(1.0, 20.0, 2.7)
    out["psi_z100_R20_b27"] = psi_2d(100.0, 20.0, 2.7)
    s = 10 * mp.mpf(4) ** (-BETA)
    out["main_link_z1_ps10_rd4_b27"] = main_link(s)
    out["main_link_z01_ps10_rd4_b27"] = main_link(s / 10)
    out["eav_z005_ps10_rmax10_b27"] = psi_2d(0.5, 10.0, 2.7)
    out["psi_z1_R40_b27"] = psi_2d(1.0, 40.0, 2.7)
    out["gain_mean"] = mp.quad(lambda g: g * gain_pdf(g), [0, 1, 5, 60])
    out["gain_cdf_1"] = mp.quad(gain_pdf, [0, 1])
    out["received_power_10_15_4_27"] = 10 * mp.mpf("1.5") * mp.mpf(4) ** (-BETA)


if __name__ == "__main__":
    main()
