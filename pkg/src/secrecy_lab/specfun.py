"""Scalar special functions needed by the closed-form MGFs.

Everything is evaluated in double precision from elementary operations:
log-gamma (Lanczos), the upper incomplete gamma function (series /
continued fraction), the modified Bessel function K0 (power series /
Steed continued fraction), and the Gauss 2F1 and generalized 3F2 series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SeriesControl",
    "SpecialFunctionDomainError",
    "ConvergenceError",
    "ln_gamma",
    "gamma",
    "upper_incomplete_gamma",
    "bessel_k0",
    "hyp2f1",
    "hyp3f2",
]

EULER_GAMMA = 0.57721566490153286061
_EPS = 2.220446049250313e-16

# Lanczos g=7, n=9 (Godfrey).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Stirling-series coefficients B_{2n} / (2n (2n-1)).
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)

_K0_UNDERFLOW = 705.0
_K0_SERIES_MAX = 2.0


class SpecialFunctionDomainError(ValueError):
    """Argument outside the supported domain of a special function."""


class ConvergenceError(ArithmeticError):
    """A series, continued fraction or quadrature missed its tolerance budget."""


@dataclass(frozen=True)
class SeriesControl:
    """Truncation budget shared by the series evaluators."""

    max_terms: int = 10_000
    rel_tol: float = 1e-12
    abs_tol: float = 1e-300

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.rel_tol > 0 or not self.abs_tol > 0:
            raise ValueError("rel_tol and abs_tol must be positive")


DEFAULT_CONTROL = SeriesControl()


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise SpecialFunctionDomainError(f"ln_gamma requires x > 0, got {x!r}")
    if x >= 10.0:
        # Stirling series; the first omitted term is below 1e-17 for x >= 10.
        inv = 1.0 / x
        inv2 = inv * inv
        corr = 0.0
        for c in reversed(_STIRLING):
            corr = corr * inv2 + c
        return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr * inv
    if x < 0.5:
        # Reflection keeps the Lanczos sum away from its poor region near 0.
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    y = x - 1.0
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (y + i)
    t = y + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (y + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    """Gamma function for x > 0 (via ln_gamma)."""
    return math.exp(ln_gamma(x))


def _lower_gamma_series(a: float, x: float, ctl: SeriesControl) -> float:
    # gamma(a, x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n))
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(ctl.max_terms):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) <= abs(total) * _EPS:
            return total * math.exp(a * math.log(x) - x)
    raise ConvergenceError(f"incomplete gamma series failed (a={a}, x={x})")


def _upper_gamma_cf(a: float, x: float, ctl: SeriesControl) -> float:
    # Modified Lentz evaluation of the Legendre continued fraction.
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, ctl.max_terms + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) <= _EPS:
            return h * math.exp(a * math.log(x) - x)
    raise ConvergenceError(f"incomplete gamma continued fraction failed (a={a}, x={x})")


def upper_incomplete_gamma(a: float, x: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Upper incomplete gamma function Gamma(a, x) for a > 0, x >= 0."""
    if x < 0:
        raise SpecialFunctionDomainError(f"upper_incomplete_gamma requires x >= 0, got {x!r}")
    if not a > 0:
        raise SpecialFunctionDomainError(f"upper_incomplete_gamma requires a > 0, got {a!r}")
    if x == 0:
        return gamma(a)
    if x < a + 1.0:
        return gamma(a) - _lower_gamma_series(a, x, control)
    return _upper_gamma_cf(a, x, control)


def _k0_series(x: float) -> float:
    # K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 H_k
    q = 0.25 * x * x
    term = 1.0
    i0 = 1.0
    tail = 0.0
    harmonic = 0.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += term * harmonic
        if term * harmonic <= _EPS * 1e-2 * tail:
            break
    return -(math.log(0.5 * x) + EULER_GAMMA) * i0 + tail


def _k0_steed(x: float) -> float:
    # Steed's continued fraction (Temme's CF2 for nu = 0).
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10_000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:
        raise ConvergenceError(f"K0 continued fraction failed (x={x})")
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s


def bessel_k0(x: float) -> float:
    """Modified Bessel function of the second kind, order zero, for x > 0."""
    if not x > 0:
        raise SpecialFunctionDomainError(f"bessel_k0 requires x > 0, got {x!r}")
    if x > _K0_UNDERFLOW:
        return 0.0
    if x <= _K0_SERIES_MAX:
        return _k0_series(x)
    return _k0_steed(x)


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and v == math.floor(v)


def _sum_series(ratio, x: float, ctl: SeriesControl, name: str) -> float:
    """Sum 1 + sum_n t_n where t_{n+1} = t_n * ratio(n) * x."""
    total = 1.0
    term = 1.0
    ax = abs(x)
    for n in range(ctl.max_terms):
        prev = term
        term = term * ratio(n) * x
        total += term
        if term == 0.0:
            return total
        # Remaining tail behaves like a geometric series with ratio -> |x|.
        r = max(abs(term / prev), ax)
        tail = abs(term) * r / (1.0 - r) if r < 1.0 else math.inf
        if tail <= ctl.rel_tol * abs(total) + ctl.abs_tol:
            return total
    raise ConvergenceError(f"{name} series did not converge in {ctl.max_terms} terms (x={x})")


def hyp2f1(a: float, b: float, c: float, x: float, control: SeriesControl = DEFAULT_CONTROL) -> float:
    """Gauss hypergeometric function 2F1(a, b; c; x) for |x| < 1.

    For x <= -0.5 the Pfaff transformation
    2F1(a, b; c; x) = (1 - x)^-a 2F1(a, c - b; c; x / (x - 1))
    moves the argument into [1/3, 1/2) where the series is positive and fast.
    """
    if _is_nonpositive_integer(c):
        raise SpecialFunctionDomainError(f"hyp2f1 undefined for c={c!r}")
    if not abs(x) < 1.0:
        raise SpecialFunctionDomainError(f"hyp2f1 requires |x| < 1, got {x!r}")
    if x == 0.0:
        return 1.0
    if x <= -0.5:
        y = x / (x - 1.0)
        return (1.0 - x) ** (-a) * hyp2f1(a, c - b, c, y, control)
    return _sum_series(
        lambda n: (a + n) * (b + n) / ((c + n) * (n + 1)), x, control, "2F1"
    )


def hyp3f2(
    a1: float,
    a2: float,
    a3: float,
    b1: float,
    b2: float,
    x: float,
    control: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """Generalized hypergeometric 3F2(a1, a2, a3; b1, b2; x) by direct summation.

    Reliable for |x| <= 0.95; no analytic continuation is attempted.
    """
    if _is_nonpositive_integer(b1) or _is_nonpositive_integer(b2):
        raise SpecialFunctionDomainError(f"hyp3f2 undefined for b=({b1!r}, {b2!r})")
    if not abs(x) < 1.0:
        raise SpecialFunctionDomainError(f"hyp3f2 requires |x| < 1, got {x!r}")
    if x == 0.0:
        return 1.0
    return _sum_series(
        lambda n: (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1)),
        x,
        control,
        "3F2",
    )
