"""Seeded Monte-Carlo estimators for the MGFs and the average capacities.

Worker ``w`` draws from ``SeedSequence(seed).spawn(workers)[w]`` and processes
a fixed share of the samples in fixed-size chunks. Per-chunk (count, mean,
M2) summaries are merged in worker order, so a given (seed, n, workers)
triple always produces bit-identical results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel import ChannelDraw, SystemParams, received_power, sample_channel_draw, sinr

__all__ = [
    "McEstimate",
    "CapacityEstimates",
    "estimate_capacities",
    "estimate_mgf",
    "interference_weight_d",
    "interference_weight_e",
    "main_link_weight",
    "eav_link_weight",
    "DEFAULT_SAMPLES",
]

DEFAULT_SAMPLES = 1_000_000
CHUNK = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_samples: int
    seed: int

    def sigma_distance(self, value: float) -> float:
        """(value - mean) in units of the standard error."""
        diff = value - self.mean
        if diff == 0.0:
            return 0.0
        if self.std_error == 0.0:
            return math.copysign(math.inf, diff)
        return diff / self.std_error


@dataclass(frozen=True)
class CapacityEstimates:
    c_d: McEstimate
    c_e: McEstimate
    c_s_diff: McEstimate
    c_s_max: McEstimate


class _Moments:
    """Running (count, mean, M2) per column, merged with Chan's update."""

    def __init__(self, width: int):
        self.n = 0
        self.mean = np.zeros(width)
        self.m2 = np.zeros(width)

    def add_batch(self, values: np.ndarray) -> None:
        nb = values.shape[0]
        if nb == 0:
            return
        mb = values.mean(axis=0)
        m2b = ((values - mb) ** 2).sum(axis=0)
        self.merge(nb, mb, m2b)

    def merge(self, nb: int, mb: np.ndarray, m2b: np.ndarray) -> None:
        na = self.n
        n = na + nb
        delta = mb - self.mean
        self.mean = self.mean + delta * (nb / n)
        self.m2 = self.m2 + m2b + delta**2 * (na * nb / n)
        self.n = n

    def std_error(self) -> np.ndarray:
        if self.n < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.n - 1) / self.n)


def _shares(n: int, workers: int) -> list[int]:
    base, extra = divmod(n, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def _run(
    stat: Callable[[ChannelDraw], np.ndarray],
    width: int,
    params: SystemParams,
    n: int,
    seed: int,
    workers: int,
) -> _Moments:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    streams = np.random.SeedSequence(seed).spawn(workers)

    def job(w: int) -> _Moments:
        rng = np.random.default_rng(streams[w])
        acc = _Moments(width)
        left = shares[w]
        while left > 0:
            m = min(CHUNK, left)
            acc.add_batch(stat(sample_channel_draw(params, rng, m)))
            left -= m
        return acc

    shares = _shares(n, workers)
    if workers == 1:
        parts = [job(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(workers)))
    total = _Moments(width)
    for part in parts:
        if part.n:
            total.merge(part.n, part.mean, part.m2)
    return total


def _sinrs(draw: ChannelDraw, params: SystemParams) -> tuple[np.ndarray, np.ndarray]:
    sig_d = received_power(params.p_s, draw.g_d, params.r_d, params.beta)
    sig_e = received_power(params.p_s, draw.g_e, draw.r_e, params.beta)
    if params.k:
        int_d = received_power(params.p_k, draw.g_int_d, draw.r_int_d, params.beta)
        int_e = received_power(params.p_k, draw.g_int_e, draw.r_int_e, params.beta)
    else:
        int_d = int_e = np.zeros(np.shape(sig_d) + (0,))
    return sinr(sig_d, int_d, params.n_0), sinr(sig_e, int_e, params.n_0)


def estimate_capacities(
    params: SystemParams, n: int = DEFAULT_SAMPLES, seed: int = 0, workers: int = 1
) -> CapacityEstimates:
    """Empirical E[C_D], E[C_E], E[C_D - C_E] and E[max(C_D - C_E, 0)]."""

    def stat(draw: ChannelDraw) -> np.ndarray:
        gamma_d, gamma_e = _sinrs(draw, params)
        c_d = np.log2(1.0 + gamma_d)
        c_e = np.log2(1.0 + gamma_e)
        diff = c_d - c_e
        return np.column_stack([c_d, c_e, diff, np.maximum(diff, 0.0)])

    acc = _run(stat, 4, params, n, seed, workers)
    se = acc.std_error()

    def est(i: int, mean: float | None = None) -> McEstimate:
        return McEstimate(float(acc.mean[i] if mean is None else mean), float(se[i]), n, seed)

    c_d, c_e = est(0), est(1)
    return CapacityEstimates(
        c_d=c_d,
        c_e=c_e,
        # Same draws, so the difference of means is the mean of differences.
        c_s_diff=est(2, c_d.mean - c_e.mean),
        c_s_max=est(3),
    )


def interference_weight_d(draw: ChannelDraw, params: SystemParams) -> np.ndarray:
    if params.k == 0:
        return np.zeros(np.shape(draw.g_d))
    return np.sum(received_power(params.p_k, draw.g_int_d, draw.r_int_d, params.beta), axis=-1)


def interference_weight_e(draw: ChannelDraw, params: SystemParams) -> np.ndarray:
    if params.k == 0:
        return np.zeros(np.shape(draw.g_e))
    return np.sum(received_power(params.p_k, draw.g_int_e, draw.r_int_e, params.beta), axis=-1)


def main_link_weight(draw: ChannelDraw, params: SystemParams) -> np.ndarray:
    return received_power(params.p_s, draw.g_d, params.r_d, params.beta)


def eav_link_weight(draw: ChannelDraw, params: SystemParams) -> np.ndarray:
    return received_power(params.p_s, draw.g_e, draw.r_e, params.beta)


def estimate_mgf(
    weight: Callable[[ChannelDraw, SystemParams], np.ndarray],
    z: float | Sequence[float],
    params: SystemParams,
    n: int = DEFAULT_SAMPLES,
    seed: int = 0,
    workers: int = 1,
):
    """Sample mean of exp(-z * weight(draw)).

    ``z`` may be a sequence, in which case every point reuses the same draws
    and a list of estimates is returned.
    """
    zs = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(zs < 0):
        raise ValueError("z must be nonnegative")

    def stat(draw: ChannelDraw) -> np.ndarray:
        w = np.asarray(weight(draw, params), dtype=float)
        return np.exp(-np.outer(w, zs))

    acc = _run(stat, zs.size, params, n, seed, workers)
    se = acc.std_error()
    out = [McEstimate(float(m), float(s), n, seed) for m, s in zip(acc.mean, se)]
    return out if np.ndim(z) else out[0]
