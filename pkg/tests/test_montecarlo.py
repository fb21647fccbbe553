import math

import numpy as np
import pytest

from secrecy_lab.capacity import average_secrecy_capacity
from secrecy_lab.channel import SystemParams, sample_channel_draw
from secrecy_lab.mgf import mgf_main_link
from secrecy_lab.montecarlo import (
    CHUNK,
    McEstimate,
    estimate_capacities,
    estimate_mgf,
    interference_weight_d,
    interference_weight_e,
    main_link_weight,
)

DEFAULT = SystemParams()


def test_vanishing_source_power():
    mc = estimate_capacities(DEFAULT.with_(p_s=1e-30), 10_000, seed=1)
    assert mc.c_d.mean == pytest.approx(0.0, abs=1e-25)
    assert mc.c_s_diff.mean <= 0.0


@pytest.mark.parametrize("k", [0, 1, 5])
def test_max_estimator_dominates_difference(k):
    mc = estimate_capacities(DEFAULT.with_(k=k), 20_000, seed=k)
    assert mc.c_s_max.mean >= mc.c_s_diff.mean
    assert mc.c_s_max.mean >= max(mc.c_s_diff.mean, 0.0)


def test_difference_is_exactly_difference_of_means():
    mc = estimate_capacities(DEFAULT, 50_000, seed=4)
    assert mc.c_s_diff.mean == mc.c_d.mean - mc.c_e.mean
    assert mc.c_s_diff.n_samples == 50_000 and mc.c_s_diff.seed == 4


def test_mgf_at_zero_is_exact():
    est = estimate_mgf(main_link_weight, 0.0, DEFAULT, 10_000, seed=2)
    assert est.mean == 1.0 and est.std_error == 0.0


@pytest.mark.parametrize("weight", [interference_weight_d, interference_weight_e])
def test_interference_mgf_without_interferers(weight):
    est = estimate_mgf(weight, 3.0, DEFAULT.with_(k=0), 10_000, seed=2)
    assert est.mean == 1.0 and est.std_error == 0.0


def test_main_link_mgf_matches_closed_form():
    est = estimate_mgf(main_link_weight, 1.0, DEFAULT, 200_000, seed=10)
    assert abs(mgf_main_link(1.0, 10.0, 4.0, 2.7).value - est.mean) < 3 * est.std_error


def test_capacity_without_interference_matches_analytic():
    p = DEFAULT.with_(k=0)
    mc = estimate_capacities(p, 100_000, seed=12)
    assert abs(average_secrecy_capacity(p).c_d - mc.c_d.mean) < 4 * mc.c_d.std_error


@pytest.mark.parametrize("workers", [1, 3])
def test_bit_identical_reproduction(workers):
    a = estimate_capacities(DEFAULT.with_(k=2), 150_001, seed=99, workers=workers)
    b = estimate_capacities(DEFAULT.with_(k=2), 150_001, seed=99, workers=workers)
    assert a == b


def test_different_seeds_agree_statistically():
    a = estimate_capacities(DEFAULT, 100_000, seed=1).c_d
    b = estimate_capacities(DEFAULT, 100_000, seed=2).c_d
    assert a.mean != b.mean
    assert abs(a.mean - b.mean) < 6 * math.hypot(a.std_error, b.std_error)


def test_worker_split_changes_streams_not_statistics():
    one = estimate_capacities(DEFAULT, 100_000, seed=5, workers=1).c_d
    four = estimate_capacities(DEFAULT, 100_000, seed=5, workers=4).c_d
    assert abs(one.mean - four.mean) < 6 * math.hypot(one.std_error, four.std_error)


def test_standard_error_scales_with_root_n():
    small = estimate_capacities(DEFAULT, 100_000, seed=21).c_d.std_error
    large = estimate_capacities(DEFAULT, 200_000, seed=21).c_d.std_error
    assert large / small == pytest.approx(1 / math.sqrt(2), rel=0.2)


def test_streaming_moments_match_two_pass():
    # Chunked Chan merge must agree with numpy's two-pass statistics.
    z = [0.3]
    est = estimate_mgf(main_link_weight, z, DEFAULT, 200_000, seed=17)[0]
    rng_draws = []
    rng = np.random.default_rng(np.random.SeedSequence(17).spawn(1)[0])
    left = 200_000
    while left:
        m = min(CHUNK, left)
        rng_draws.append(np.exp(-0.3 * main_link_weight(sample_channel_draw(DEFAULT, rng, m), DEFAULT)))
        left -= m
    x = np.concatenate(rng_draws)
    assert est.mean == pytest.approx(x.mean(), rel=1e-13)
    assert est.std_error == pytest.approx(x.std(ddof=1) / math.sqrt(x.size), rel=1e-10)


def test_sigma_distance():
    e = McEstimate(1.0, 0.5, 100, 0)
    assert e.sigma_distance(2.0) == 2.0
    assert McEstimate(1.0, 0.0, 100, 0).sigma_distance(1.0) == 0.0
    assert McEstimate(1.0, 0.0, 100, 0).sigma_distance(1.5) == math.inf


def test_invalid_sample_counts():
    with pytest.raises(ValueError):
        estimate_capacities(DEFAULT, 0)
    with pytest.raises(ValueError):
        estimate_mgf(main_link_weight, -1.0, DEFAULT, 10)
