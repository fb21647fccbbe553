"""System parameters, the double-Rayleigh / uniform-disk channel model, and
instantaneous SINR and secrecy capacity.

Received power from a node at distance r is ``p * g * r**-beta`` with ``g``
the double-Rayleigh power gain (density ``g K0(g)``) and ``r`` uniform over a
disk. No exclusion radius is imposed, so ``r**-beta`` is unbounded near the
receiver and the mean interference power is infinite for ``beta >= 2``. Only
MGFs and log-capacities are finite.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .specfun import bessel_k0

__all__ = [
    "SystemParams",
    "ChannelDraw",
    "double_rayleigh_pdf",
    "sample_double_rayleigh_gain",
    "sample_disk_distance",
    "sample_channel_draw",
    "sinr",
    "received_power",
    "instantaneous_secrecy_capacity",
]


@dataclass(frozen=True)
class SystemParams:
    """Link geometry and powers. Watts and meters throughout.

    ``r_int`` is the radius of the disk holding the interferers around each
    receiver; ``r_max`` bounds the eavesdropper distance from the source.
    ``n_0`` defaults to 1 W since no reference noise level is available.
    """

    p_s: float = 10.0
    p_k: float = 10.0
    k: int = 1
    r_d: float = 4.0
    r_max: float = 10.0
    r_int: float = 20.0
    beta: float = 2.7
    n_0: float = 1.0

    def __post_init__(self):
        for name in ("p_s", "p_k", "n_0", "r_d", "r_max", "r_int"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 0:
            raise ValueError(f"k must be a nonnegative integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        if not (math.isfinite(self.beta) and self.beta > 2):
            raise ValueError(f"beta must be > 2 (closed forms exclude free space), got {self.beta!r}")

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SystemParams":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        return cls(**data)


@dataclass(frozen=True)
class ChannelDraw:
    """One realization (or a batch, along the leading axis) of every gain and distance.

    Interferer arrays have a trailing axis of length ``k``.
    """

    g_d: np.ndarray
    g_e: np.ndarray
    r_e: np.ndarray
    g_int_d: np.ndarray
    r_int_d: np.ndarray
    g_int_e: np.ndarray
    r_int_e: np.ndarray


def double_rayleigh_pdf(g: float) -> float:
    """Density ``g K0(g)`` of the double-Rayleigh power gain."""
    if g < 0:
        raise ValueError(f"gain must be nonnegative, got {g!r}")
    if g == 0:
        return 0.0
    return g * bessel_k0(g)


def _unit_open_left(rng: np.random.Generator, size) -> np.ndarray:
    # Uniform on (0, 1].
    return 1.0 - rng.random(size)


def sample_double_rayleigh_gain(rng: np.random.Generator, size=None):
    """Product of two independent unit-scale Rayleigh amplitudes.

    If A, B have density ``a exp(-a^2/2)`` then A*B has density ``g K0(g)``,
    with mean pi/2.
    """
    a = np.sqrt(-2.0 * np.log(_unit_open_left(rng, size)))
    b = np.sqrt(-2.0 * np.log(_unit_open_left(rng, size)))
    out = a * b
    return float(out) if size is None else out


def sample_disk_distance(radius: float, rng: np.random.Generator, size=None):
    """Distance to a point uniform in a disk: density 2r/radius^2 on (0, radius]."""
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    out = radius * np.sqrt(_unit_open_left(rng, size))
    return float(out) if size is None else out


def sample_channel_draw(params: SystemParams, rng: np.random.Generator, size: int | None = None) -> ChannelDraw:
    """Draw all random quantities; interferer positions at D and E are independent."""
    shape = () if size is None else (size,)
    k = params.k
    return ChannelDraw(
        g_d=sample_double_rayleigh_gain(rng, shape),
        g_e=sample_double_rayleigh_gain(rng, shape),
        r_e=sample_disk_distance(params.r_max, rng, shape),
        g_int_d=sample_double_rayleigh_gain(rng, shape + (k,)),
        r_int_d=sample_disk_distance(params.r_int, rng, shape + (k,)),
        g_int_e=sample_double_rayleigh_gain(rng, shape + (k,)),
        r_int_e=sample_disk_distance(params.r_int, rng, shape + (k,)),
    )


def sinr(signal_power, interference_powers, n_0: float):
    """Signal over (summed interference + noise).

    ``interference_powers`` is summed over its last axis, so batched arrays of
    shape (n, k) work as well as plain lists.
    """
    if not n_0 > 0:
        raise ValueError(f"n_0 must be positive, got {n_0!r}")
    interference = np.sum(np.asarray(interference_powers, dtype=float), axis=-1)
    out = np.asarray(signal_power, dtype=float) / (interference + n_0)
    return float(out) if out.ndim == 0 else out


def received_power(p_tx, g, r, beta: float):
    """``p_tx * g * r**-beta``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ValueError("distance must be positive")
    out = p_tx * np.asarray(g, dtype=float) * r ** (-beta)
    return float(out) if out.ndim == 0 else out


def instantaneous_secrecy_capacity(gamma_d, gamma_e):
    """``max(log2(1 + gamma_d) - log2(1 + gamma_e), 0)`` in bits/s/Hz."""
    diff = np.log2(1.0 + np.asarray(gamma_d, dtype=float)) - np.log2(1.0 + np.asarray(gamma_e, dtype=float))
    out = np.maximum(diff, 0.0)
    return float(out) if out.ndim == 0 else out
