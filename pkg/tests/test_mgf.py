import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from secrecy_lab import mgf as mgf_mod
from secrecy_lab.channel import SystemParams
from secrecy_lab.mgf import (
    MgfMethod,
    MgfValue,
    PsiArgs,
    inner_distance_integral,
    mgf_eav_link,
    mgf_interference,
    mgf_joint,
    mgf_main_link,
    mgf_psi,
)
from secrecy_lab.montecarlo import (
    eav_link_weight,
    estimate_mgf,
    interference_weight_d,
    main_link_weight,
)

import oracles

BETA = 2.7


def main_link_quad(s):
    """Independent check: integral of exp(-s g) g K0(g) with scipy's K0."""
    f = lambda g: math.exp(-s * g) * g * special.k0(g) if g > 0 else 0.0
    return integrate.quad(f, 0, np.inf, epsabs=0, epsrel=1e-12, limit=400)[0]


# ---------------------------------------------------------------- inner integral


def test_inner_distance_integral_examples():
    assert inner_distance_integral(0.0, 2.0, 20.0, BETA) == 1.0
    assert inner_distance_integral(3.0, 0.0, 20.0, BETA) == 1.0
    assert inner_distance_integral(1.0, 1.0, 20.0, BETA) == pytest.approx(oracles.INNER_Z1_G1_R20_B27, rel=1e-12)


@pytest.mark.parametrize("zg", [1e-3, 1.0, 50.0, 5e3, 1e5])
@pytest.mark.parametrize("radius, beta", [(20.0, 2.7), (10.0, 3.5), (5.0, 2.1)])
def test_inner_distance_integral_against_quadrature(zg, radius, beta):
    f = lambda r: math.exp(-zg * r ** (-beta)) * 2 * r / radius**2
    ref = integrate.quad(f, 0, radius, epsabs=1e-15, epsrel=1e-12, limit=400)[0]
    assert inner_distance_integral(zg, 1.0, radius, beta) == pytest.approx(ref, rel=1e-9, abs=1e-14)


def test_inner_distance_integral_rejects_free_space():
    with pytest.raises(ValueError):
        inner_distance_integral(1.0, 1.0, 20.0, 2.0)


# ---------------------------------------------------------------- psi


def test_psi_examples():
    assert mgf_psi(0.0, 20.0, BETA) == MgfValue(1.0, MgfMethod.CLOSED_FORM)
    assert mgf_psi(1.0, 20.0, BETA).value == pytest.approx(oracles.PSI_Z1_R20_B27, rel=1e-9)
    assert mgf_psi(100.0, 20.0, BETA).value == pytest.approx(oracles.PSI_Z100_R20_B27, rel=1e-9)
    assert mgf_psi(1.0, 40.0, BETA).value == pytest.approx(oracles.PSI_Z1_R40_B27, rel=1e-9)


@pytest.mark.parametrize("scaled", [0.05, 0.2, 0.5, 0.8])
@pytest.mark.parametrize("radius, beta", [(20.0, 2.7), (10.0, 2.7), (40.0, 3.5), (20.0, 2.2)])
def test_psi_closed_form_matches_semi_closed(scaled, radius, beta):
    z = scaled * radius**beta
    closed = mgf_mod._psi_closed_form(z, radius, beta)
    numeric = mgf_mod._psi_semi_closed(z, radius, beta)
    assert closed == pytest.approx(numeric, rel=1e-6)


def test_psi_method_switch():
    radius = 20.0
    scale = radius**BETA
    assert mgf_psi(0.95 * scale, radius, BETA).method is MgfMethod.CLOSED_FORM
    assert mgf_psi(0.99 * scale, radius, BETA).method is MgfMethod.SEMI_CLOSED_QUADRATURE
    below = mgf_psi(0.95 * scale, radius, BETA).value
    above = mgf_psi(0.95 * scale * (1 + 1e-9), radius, BETA).value
    assert above == pytest.approx(below, rel=1e-8)


def test_psi_monte_carlo_cross_check():
    # mgf_psi(z p_s, r_max) is the eavesdropper link; reuse its sampler.
    p = SystemParams()
    est = estimate_mgf(eav_link_weight, 0.1, p, 100_000, seed=7)
    assert abs(mgf_psi(1.0, p.r_max, BETA).value - est.mean) < 4 * est.std_error


def test_psi_args_validation():
    with pytest.raises(ValueError):
        PsiArgs(-1.0, 20.0, BETA)
    with pytest.raises(ValueError):
        PsiArgs(1.0, 20.0, 2.0)
    assert PsiArgs(2.0, 2.0, 3.0).scaled == pytest.approx(0.25)


# ---------------------------------------------------------------- interference


def test_interference_examples():
    p0 = SystemParams(k=0)
    assert mgf_interference(5.0, p0).value == 1.0
    p2 = SystemParams(k=2)
    single = mgf_psi(0.3 * p2.p_k, p2.r_int, p2.beta).value
    assert mgf_interference(0.3, p2).value == pytest.approx(single**2, rel=1e-14)
    p5 = SystemParams(k=5, r_int=40.0)
    assert mgf_interference(0.1, p5).value == pytest.approx(oracles.PSI_Z1_R40_B27**5, rel=1e-8)


def test_interference_monte_carlo():
    p = SystemParams(k=5, r_int=40.0)
    est = estimate_mgf(interference_weight_d, 0.1, p, 100_000, seed=11)
    assert abs(mgf_interference(0.1, p).value - est.mean) < 4 * est.std_error


@pytest.mark.parametrize("k", [2, 3, 5])
@pytest.mark.parametrize("z", [0.01, 1.0, 50.0, 400.0])
def test_interference_power_law(k, z):
    one = mgf_interference(z, SystemParams(k=1)).value
    assert mgf_interference(z, SystemParams(k=k)).value == pytest.approx(one**k, rel=1e-12)


# ---------------------------------------------------------------- main link


def test_main_link_examples():
    assert mgf_main_link(0.0, 10.0, 4.0, BETA).value == 1.0
    # s = 1 puts the 2F1 argument at zero.
    z1 = 4.0**BETA / 10.0
    assert mgf_main_link(z1, 10.0, 4.0, BETA).value == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert mgf_main_link(1.0, 10.0, 4.0, BETA).value == pytest.approx(oracles.MAIN_LINK_Z1_PS10_RD4_B27, rel=1e-10)


def test_main_link_tiny_argument_is_one():
    # Pfaff branch near x = -1 must reproduce M(0+) = 1.
    assert mgf_main_link(1e-14, 10.0, 4.0, BETA).value == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("s", [0.01, 0.1, 1.0, 10.0, 100.0])
def test_main_link_against_quadrature(s):
    z = s * 4.0**BETA / 10.0
    assert mgf_main_link(z, 10.0, 4.0, BETA).value == pytest.approx(main_link_quad(s), abs=1e-8)


@pytest.mark.parametrize("s", [250.0, 1e4])
def test_main_link_large_argument_falls_back(s):
    z = s * 4.0**BETA / 10.0
    m = mgf_main_link(z, 10.0, 4.0, BETA)
    assert m.method is MgfMethod.FULL_QUADRATURE
    assert m.value == pytest.approx(main_link_quad(s), rel=1e-8)


# ---------------------------------------------------------------- eavesdropper


def test_eav_link_examples():
    assert mgf_eav_link(0.0, 10.0, 10.0, BETA).value == 1.0
    assert mgf_eav_link(0.37, 10.0, 10.0, BETA) == mgf_psi(3.7, 10.0, BETA)
    assert mgf_eav_link(0.05, 10.0, 10.0, BETA).value == pytest.approx(oracles.EAV_Z005_PS10_RMAX10_B27, rel=1e-9)


def test_eav_link_monte_carlo():
    p = SystemParams()
    est = estimate_mgf(eav_link_weight, 0.05, p, 100_000, seed=3)
    assert abs(mgf_eav_link(0.05, p.p_s, p.r_max, BETA).value - est.mean) < 4 * est.std_error


# ---------------------------------------------------------------- joint / value type


def test_joint_examples():
    m = MgfValue(0.3)
    assert mgf_joint(MgfValue(1.0), m).value == 0.3
    assert mgf_joint(m, MgfValue(1.0)).value == 0.3
    assert mgf_joint(MgfValue(0.8), MgfValue(0.5)).value == pytest.approx(0.4)
    mixed = mgf_joint(MgfValue(0.8, MgfMethod.FULL_QUADRATURE), MgfValue(0.5, MgfMethod.SEMI_CLOSED_QUADRATURE))
    assert mixed.method is MgfMethod.FULL_QUADRATURE


def test_mgf_value_range():
    with pytest.raises(ValueError):
        MgfValue(1.5)
    with pytest.raises(ValueError):
        MgfValue(-0.1)


# ---------------------------------------------------------------- properties

ALL_MGFS = {
    "psi": lambda z: mgf_psi(z, 20.0, BETA),
    "interference_k3": lambda z: mgf_interference(z, SystemParams(k=3)),
    "main": lambda z: mgf_main_link(z, 10.0, 4.0, BETA),
    "eavesdropper": lambda z: mgf_eav_link(z, 10.0, 10.0, BETA),
}


@pytest.mark.parametrize("name", ALL_MGFS)
def test_mgf_unit_at_zero_and_strictly_decreasing(name):
    f = ALL_MGFS[name]
    assert f(0.0).value == pytest.approx(1.0, abs=1e-12)
    zs = np.concatenate([[0.0], np.geomspace(1e-4, 2e3, 40)])
    vals = [f(z).value for z in zs]
    assert all(0.0 < v <= 1.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


@given(st.floats(1e-6, 1e4), st.floats(1.0, 50.0), st.floats(2.05, 5.0))
def test_psi_in_unit_interval(z, radius, beta):
    v = mgf_psi(z, radius, beta).value
    assert 0.0 < v <= 1.0


MC_Z = [0.01, 0.05, 0.2, 1.0, 5.0]


@pytest.mark.parametrize(
    "weight, analytic",
    [
        (interference_weight_d, lambda z, p: mgf_interference(z, p)),
        (main_link_weight, lambda z, p: mgf_main_link(z, p.p_s, p.r_d, p.beta)),
        (eav_link_weight, lambda z, p: mgf_eav_link(z, p.p_s, p.r_max, p.beta)),
    ],
    ids=["interference", "main", "eavesdropper"],
)
def test_closed_forms_within_three_sigma_of_monte_carlo(weight, analytic):
    p = SystemParams(k=2)
    estimates = estimate_mgf(weight, MC_Z, p, 1_000_000, seed=2024)
    for z, est in zip(MC_Z, estimates):
        assert abs(analytic(z, p).value - est.mean) < 3 * est.std_error, z
