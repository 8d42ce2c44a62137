import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from refmoead.core import Strategy
from refmoead.refpoint import (
    drp_epsilon,
    gauss_cdf,
    init_state,
    normw_choice,
    observe,
    select_z,
    z_w,
)

W = np.array([0.5, 0.5])


def test_init_min_and_schedule():
    st_ = init_state(Strategy.MIN, np.array([[1.0, 2.0], [2.0, 1.0]]), maxFE=20000)
    np.testing.assert_array_equal(st_.Z_m, [1, 1])
    assert (st_.mu, st_.sigma) == (10000, 2000)


def test_observe():
    s = init_state("Min", np.array([[0.2, 0.5]]), 100)
    observe(s, np.array([0.3, 0.1]))
    np.testing.assert_array_equal(s.Z_m, [0.2, 0.1])
    observe(s, np.array([0.9, 0.9]))
    np.testing.assert_array_equal(s.Z_m, [0.2, 0.1])
    with pytest.raises(ValueError):
        observe(s, np.array([np.inf, 0]))


@given(arrays(np.float64, (20, 3), elements=st.floats(-5, 5)))
@settings(max_examples=50, deadline=None)
def test_observe_monotone(F):
    s = init_state("Min", F[:1], 100)
    prev = s.Z_m.copy()
    for f in F[1:]:
        observe(s, f)
        assert np.all(s.Z_m <= prev)
        prev = s.Z_m.copy()
    np.testing.assert_array_equal(s.Z_m, F.min(axis=0))


def test_true_ideal_fixed():
    s = init_state("TrueIdeal", np.array([[0.4, 0.6]]), 100, true_ideal=np.zeros(2))
    rng = np.random.default_rng(0)
    for fe in (1, 50, 100):
        observe(s, np.array([0.1, 0.1]))
        np.testing.assert_array_equal(select_z(s, fe, 0, W, rng), [0, 0])
    with pytest.raises(ValueError):
        init_state("TrueIdeal", np.array([[0.4, 0.6]]), 100)


def test_gauss_cdf_oracle():
    assert gauss_cdf(10, 10, 2) == 0.5
    assert gauss_cdf(10 + 5 * 2, 10, 2) >= 0.9999997
    exact = float(mpmath.ncdf(-1))
    assert gauss_cdf(8, 10, 2) == pytest.approx(0.158655, abs=1e-6)
    assert gauss_cdf(8, 10, 2) == pytest.approx(exact, abs=1e-14)


@given(st.floats(-50, 50))
@settings(max_examples=100, deadline=None)
def test_gauss_cdf_matches_mpmath(y):
    assert gauss_cdf(y, 0.0, 3.0) == pytest.approx(float(mpmath.ncdf(y / 3.0)), abs=1e-14)


def test_z_w_examples():
    np.testing.assert_allclose(z_w(np.array([3.0, 4.0]), np.array([0.6, 0.8])), [3, 4])
    np.testing.assert_allclose(z_w(np.array([3.0, 4.0]), np.array([1.0, 0.0])), [5, 0])
    np.testing.assert_array_equal(z_w(np.zeros(2), np.array([0.3, 0.7])), [0, 0])


@given(arrays(np.float64, 3, elements=st.floats(0, 10)),
       arrays(np.float64, 3, elements=st.floats(0.01, 1)))
@settings(max_examples=200, deadline=None)
def test_z_w_on_sphere_and_ray(Zm, Wv):
    z = z_w(Zm, Wv)
    assert np.linalg.norm(z) == pytest.approx(np.linalg.norm(Zm), abs=1e-10)
    assert np.linalg.norm(np.cross(z, Wv)) <= 1e-10 * max(1.0, np.linalg.norm(Zm))


def test_drp_endpoints():
    assert drp_epsilon(1, 20000) == pytest.approx(1.0)
    assert drp_epsilon(20000, 20000) == pytest.approx(0.001)
    s = init_state("DRP", np.array([[0.5, 0.7]]), 20000)
    rng = np.random.default_rng(0)
    np.testing.assert_allclose(select_z(s, 20000, 0, W, rng), [0.499, 0.699])
    np.testing.assert_allclose(select_z(s, 1, 0, W, rng), [-0.5, -0.3])


def test_normw_branches():
    assert normw_choice(0.3, 0.2) == "0"
    assert normw_choice(0.3, 0.5) == "w"
    assert normw_choice(0.8, 0.5) == "m"


def test_normw_schedule_endpoints():
    Z = np.array([[0.3, 0.4]])
    s = init_state("NormW", Z, 20000)
    rng = np.random.default_rng(5)
    early = [select_z(s, 1, 0, np.array([1.0, 0.0]), rng) for _ in range(200)]
    assert all(np.allclose(z, [0.5, 0.0]) for z in early)
    late = [select_z(s, 20000, 0, W, rng) for _ in range(200)]
    assert all(np.allclose(z, [0.3, 0.4]) for z in late)


def test_normw_mid_schedule_frequencies():
    # at FE = mu - sigma, pro = 0.1587: Z_0 w.p. pro, Z_w otherwise
    s = init_state("NormW", np.array([[0.3, 0.4]]), 20000)
    rng = np.random.default_rng(6)
    picks = [select_z(s, 8000, 0, W, rng) for _ in range(20000)]
    frac0 = np.mean([np.all(z == 0) for z in picks])
    assert frac0 == pytest.approx(0.158655, abs=0.01)
