"""Moment generating functions E[exp(-z X)] of the received-power variates.

``mgf_psi`` is the MGF of ``g * r**-beta`` with ``g`` double-Rayleigh and
``r`` uniform in a disk. Inside ``a = z * radius**-beta <= 0.95`` it uses the
closed form built from an arcsin term, a gamma-function term and two 3F2
series in ``a**2``; beyond that, where the 3F2 series stop converging, it
integrates the exact radial average against the gain density numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import integrate

from .channel import SystemParams
from .specfun import (
    ConvergenceError,
    SeriesControl,
    bessel_k0,
    gamma,
    hyp2f1,
    hyp3f2,
    upper_incomplete_gamma,
)

__all__ = [
    "MgfMethod",
    "MgfValue",
    "PsiArgs",
    "PSI_CLOSED_FORM_LIMIT",
    "inner_distance_integral",
    "mgf_psi",
    "mgf_interference",
    "mgf_main_link",
    "mgf_eav_link",
    "mgf_joint",
]

PSI_CLOSED_FORM_LIMIT = 0.95
# 2F1 argument above which the main-link series needs too many terms.
MAIN_LINK_SERIES_LIMIT = 0.99
# Tail mass of g K0(g) beyond this is ~5e-17.
GAIN_UPPER = 40.0
QUAD_REL_TOL = 1e-9
# The capacity integrand divides 1 - M(z) by z, so series are summed to
# machine precision rather than the library default.
_TIGHT = SeriesControl(rel_tol=1e-16)


class MgfMethod(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    SEMI_CLOSED_QUADRATURE = "semi_closed_quadrature"
    FULL_QUADRATURE = "full_quadrature"

    @property
    def rank(self) -> int:
        return _METHOD_RANK[self]

    def __str__(self) -> str:
        return self.value


_METHOD_RANK = {
    MgfMethod.CLOSED_FORM: 0,
    MgfMethod.SEMI_CLOSED_QUADRATURE: 1,
    MgfMethod.FULL_QUADRATURE: 2,
}


def worst_method(*methods: MgfMethod) -> MgfMethod:
    return max(methods, key=lambda m: m.rank)


@dataclass(frozen=True)
class MgfValue:
    value: float
    method: MgfMethod = MgfMethod.CLOSED_FORM

    def __post_init__(self):
        if not (0.0 <= self.value <= 1.0):
            raise ValueError(f"MGF value outside [0, 1]: {self.value!r}")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class PsiArgs:
    z: float
    radius: float
    beta: float

    def __post_init__(self):
        if self.z < 0:
            raise ValueError(f"z must be >= 0, got {self.z!r}")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        if not self.beta > 2:
            raise ValueError(f"beta must be > 2, got {self.beta!r}")

    @property
    def scaled(self) -> float:
        """``z * radius**-beta``, the argument controlling the closed form."""
        return self.z * self.radius ** (-self.beta)


def _clamp(v: float) -> float:
    return min(max(v, 0.0), 1.0)


def inner_distance_integral(z: float, g: float, radius: float, beta: float) -> float:
    """Average of ``exp(-z g r**-beta)`` over r uniform in a disk of ``radius``."""
    if not beta > 2:
        raise ValueError(f"beta must be > 2, got {beta!r}")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if z < 0 or g < 0:
        raise ValueError("z and g must be nonnegative")
    t = z * g * radius ** (-beta)
    if t == 0.0:
        return 1.0
    # (z g)^(2/beta) / R^2 == t^(2/beta)
    val = math.exp(-t) - t ** (2.0 / beta) * upper_incomplete_gamma(1.0 - 2.0 / beta, t)
    return _clamp(val)


def _psi_closed_form(z: float, radius: float, beta: float) -> float:
    a = z * radius ** (-beta)
    x = a * a
    root = math.sqrt(1.0 - x)
    # R^b (2 R^b sqrt(1 - z^2 R^-2b) + 2 z asin(z R^-b) - pi z) / (2 (R^2b - z^2) sqrt(1 - z^2 R^-2b)),
    # divided through by R^2b.
    arc = (2.0 * root + 2.0 * a * math.asin(a) - math.pi * a) / (2.0 * (1.0 - x) * root)
    gam = (
        (2.0 * z) ** (2.0 / beta)
        * gamma(1.0 + 1.0 / beta) ** 2
        * gamma(1.0 - 2.0 / beta)
        / radius**2
    )
    f_even = hyp3f2(1.5, 1.5, 0.5 - 1.0 / beta, 0.5, 1.5 - 1.0 / beta, x, _TIGHT)
    f_odd = hyp3f2(2.0, 2.0, 1.0 - 1.0 / beta, 1.5, 2.0 - 1.0 / beta, x, _TIGHT)
    series = 2.0 * math.pi * beta * a * (
        f_even / (4.0 * (beta - 2.0)) - a * f_odd / (math.pi * (beta - 1.0))
    )
    return arc - gam + series


def _psi_semi_closed(z: float, radius: float, beta: float) -> float:
    a = z * radius ** (-beta)

    def integrand(g):
        if g <= 0.0:
            return 0.0
        return g * bessel_k0(g) * inner_distance_integral(z, g, radius, beta)

    points = sorted({p for p in (0.1 / a, 1.0 / a, 10.0 / a, 1.0) if p < GAIN_UPPER})
    val, err = integrate.quad(
        integrand, 0.0, GAIN_UPPER, points=points, epsabs=1e-15, epsrel=1e-11, limit=400
    )
    if err > QUAD_REL_TOL * abs(val) + 1e-15:
        raise ConvergenceError(
            f"psi quadrature missed 1e-9 relative (z={z}, radius={radius}, beta={beta}, err={err:.3g})"
        )
    return val


def mgf_psi(z: float, radius: float, beta: float) -> MgfValue:
    """E[exp(-z g r**-beta)], g ~ g K0(g), r uniform in a disk of ``radius``."""
    args = PsiArgs(z, radius, beta)
    if z == 0.0:
        return MgfValue(1.0, MgfMethod.CLOSED_FORM)
    if args.scaled <= PSI_CLOSED_FORM_LIMIT:
        return MgfValue(_clamp(_psi_closed_form(z, radius, beta)), MgfMethod.CLOSED_FORM)
    return MgfValue(_clamp(_psi_semi_closed(z, radius, beta)), MgfMethod.SEMI_CLOSED_QUADRATURE)


def mgf_interference(z: float, params: SystemParams, radius: float | None = None) -> MgfValue:
    """MGF of the aggregate interference from ``params.k`` equal-power interferers."""
    if params.k == 0:
        return MgfValue(1.0, MgfMethod.CLOSED_FORM)
    radius = params.r_int if radius is None else radius
    single = mgf_psi(z * params.p_k, radius, params.beta)
    return MgfValue(single.value**params.k, single.method)


def _main_link_quadrature(s: float) -> float:
    # u = s g puts the exponential decay on a unit scale.
    def integrand(u):
        if u <= 0.0:
            return 0.0
        g = u / s
        return math.exp(-u) * g * bessel_k0(g) / s

    val, err = integrate.quad(integrand, 0.0, math.inf, epsabs=1e-15, epsrel=1e-11, limit=400)
    if err > QUAD_REL_TOL * abs(val) + 1e-15:
        raise ConvergenceError(f"main-link quadrature missed 1e-9 relative (s={s}, err={err:.3g})")
    return val


def mgf_main_link(z: float, p_s: float, r_d: float, beta: float) -> MgfValue:
    """E[exp(-z p_s g r_d**-beta)] at a fixed distance ``r_d``.

    With ``s = z p_s r_d**-beta`` this is
    ``4 / (3 (1 + s)^2) * 2F1(2, 1/2; 5/2; (s - 1) / (s + 1))``.
    """
    if z < 0:
        raise ValueError(f"z must be >= 0, got {z!r}")
    if not r_d > 0:
        raise ValueError(f"r_d must be positive, got {r_d!r}")
    s = z * p_s * r_d ** (-beta)
    if s == 0.0:
        return MgfValue(1.0, MgfMethod.CLOSED_FORM)
    x = (s - 1.0) / (s + 1.0)
    if x <= MAIN_LINK_SERIES_LIMIT:
        val = 4.0 / (3.0 * (1.0 + s) ** 2) * hyp2f1(2.0, 0.5, 2.5, x, _TIGHT)
        return MgfValue(_clamp(val), MgfMethod.CLOSED_FORM)
    return MgfValue(_clamp(_main_link_quadrature(s)), MgfMethod.FULL_QUADRATURE)


def mgf_eav_link(z: float, p_s: float, r_max: float, beta: float) -> MgfValue:
    """Eavesdropper link: same law as one interferer, with radius r_max and power p_s."""
    return mgf_psi(z * p_s, r_max, beta)


def mgf_joint(link_mgf: MgfValue, interference_mgf: MgfValue) -> MgfValue:
    """Joint MGF of independent link and interference terms."""
    return MgfValue(
        link_mgf.value * interference_mgf.value,
        worst_method(link_mgf.method, interference_mgf.method),
    )
