"""Average capacities from MGFs.

With ``ln(1 + x) = int_0^inf (1 - e^{-xs}) e^{-s} / s ds`` and the change of
variable ``s = z (I + N0)``, the ergodic capacity of a link with signal power
``X`` and interference ``I`` becomes

    C = 1/ln2 * int_0^inf e^{-z N0} / z * (M_I(z) - M_{X+I}(z)) dz,

a one-dimensional integral over MGFs.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .channel import SystemParams
from .mgf import (
    MgfMethod,
    MgfValue,
    mgf_eav_link,
    mgf_interference,
    mgf_joint,
    mgf_main_link,
    worst_method,
)
from .specfun import ConvergenceError

__all__ = [
    "QuadratureConfig",
    "CapacityResult",
    "capacity_integrand",
    "average_capacity",
    "integrate_capacity",
    "average_secrecy_capacity",
    "link_mgfs",
]

MgfFunc = Callable[[float], MgfValue]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    # Boundary between the endpoint panel (substituted) and the tail panel.
    z_split: float = 1.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.z_split > 0):
            raise ValueError("quadrature tolerances and z_split must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class CapacityResult:
    """Average capacities in bits/s/Hz.

    ``c_s`` is the raw difference ``c_d - c_e`` and can be negative when the
    eavesdropper is on average better placed than the destination.
    """

    c_d: float
    c_e: float
    c_s: float
    evaluations: int
    max_method_used: MgfMethod
    error_estimate: float = 0.0


@dataclass(frozen=True)
class _Integral:
    value: float
    error: float
    evaluations: int
    method: MgfMethod


def capacity_integrand(z: float, mgf_int: MgfFunc, mgf_joint: MgfFunc, n_0: float) -> float:
    """``e^{-z n0} (M_int(z) - M_joint(z)) / (z ln 2)``."""
    if not z > 0:
        raise ValueError(f"z must be positive, got {z!r}")
    diff = mgf_int(z).value - mgf_joint(z).value
    return math.exp(-z * n_0) * max(diff, 0.0) / (z * LN2)


def _tail_cutoff(n_0: float, cfg: QuadratureConfig) -> float:
    # integrand <= e^{-z n0} / (z ln2), so the tail past Z is below
    # e^{-Z n0} / (z_split n0 ln2).
    return -math.log(cfg.abs_tol * LN2 * cfg.z_split * n_0) / n_0


def integrate_capacity(
    mgf_int: MgfFunc,
    mgf_joint: MgfFunc,
    n_0: float,
    cfg: QuadratureConfig = QuadratureConfig(),
    beta: float = 2.0,
) -> _Integral:
    """Two-panel quadrature of the capacity integrand with diagnostics.

    On (0, z_split] the substitution z = t^(beta/2) removes the z^(2/beta - 1)
    endpoint singularity produced by disk-uniform path loss.
    """
    if not n_0 > 0:
        raise ValueError(f"n_0 must be positive, got {n_0!r}")
    count = 0
    method = MgfMethod.CLOSED_FORM

    def f(z):
        nonlocal count, method
        count += 1
        a, j = mgf_int(z), mgf_joint(z)
        method = worst_method(method, a.method, j.method)
        return math.exp(-z * n_0) * max(a.value - j.value, 0.0) / (z * LN2)

    p = beta / 2.0

    def head(t):
        if t <= 0.0:
            return 0.0
        return f(t**p) * p * t ** (p - 1.0)

    def run(fn, lo, hi, points=None):
        res = integrate.quad(
            fn,
            lo,
            hi,
            points=points,
            epsabs=cfg.abs_tol,
            epsrel=cfg.rel_tol,
            limit=cfg.max_subdivisions,
            full_output=1,
        )
        if len(res) > 3:
            raise ConvergenceError(f"capacity quadrature on [{lo:g}, {hi:g}] failed: {res[3]}")
        return res[0], res[1]

    v1, e1 = run(head, 0.0, cfg.z_split ** (1.0 / p))
    v2 = e2 = 0.0
    z_max = _tail_cutoff(n_0, cfg)
    if z_max > cfg.z_split:
        points = []
        edge = cfg.z_split * 10.0
        while edge < z_max:
            points.append(edge)
            edge *= 10.0
        v2, e2 = run(f, cfg.z_split, z_max, points or None)
    return _Integral(v1 + v2, e1 + e2, count, method)


def average_capacity(
    mgf_int: MgfFunc,
    mgf_joint: MgfFunc,
    n_0: float,
    cfg: QuadratureConfig = QuadratureConfig(),
    beta: float = 2.0,
) -> float:
    """Average capacity in bits/s/Hz from the interference and joint MGFs."""
    return integrate_capacity(mgf_int, mgf_joint, n_0, cfg, beta).value


def link_mgfs(params: SystemParams, receiver: str) -> tuple[MgfFunc, MgfFunc]:
    """(interference MGF, joint MGF) for receiver 'D' or 'E' as cached callables."""
    if receiver not in ("D", "E"):
        raise ValueError(f"receiver must be 'D' or 'E', got {receiver!r}")

    @functools.lru_cache(maxsize=None)
    def interference(z: float) -> MgfValue:
        return mgf_interference(z, params, params.r_int)

    if receiver == "D":
        def link(z: float) -> MgfValue:
            return mgf_main_link(z, params.p_s, params.r_d, params.beta)
    else:
        def link(z: float) -> MgfValue:
            return mgf_eav_link(z, params.p_s, params.r_max, params.beta)

    def joint(z: float) -> MgfValue:
        return mgf_joint(link(z), interference(z))

    return interference, joint


def average_secrecy_capacity(params: SystemParams, cfg: QuadratureConfig = QuadratureConfig()) -> CapacityResult:
    """Average capacities of both links and their difference."""
    d = integrate_capacity(*link_mgfs(params, "D"), params.n_0, cfg, params.beta)
    e = integrate_capacity(*link_mgfs(params, "E"), params.n_0, cfg, params.beta)
    return CapacityResult(
        c_d=d.value,
        c_e=e.value,
        c_s=d.value - e.value,
        evaluations=d.evaluations + e.evaluations,
        max_method_used=worst_method(d.method, e.method),
        error_estimate=d.error + e.error,
    )
