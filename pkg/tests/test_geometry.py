import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refmoead.geometry import (
    THEOREMS,
    check_theorem,
    make_scenario,
    pf_area,
    pf_area_closed_form,
    pf_point,
    slope_kg,
    theorem_sweep,
)


def test_pf_points():
    assert pf_point(0) == (0, 1)
    assert pf_point(1) == (1, 0)
    assert pf_point(0.5)[1] == pytest.approx((1 - 0.0625) ** 0.25)
    # 0.9375^(1/4) = 0.983995; the rounded reference 0.98389 drops a digit
    assert pf_point(0.5)[1] == pytest.approx(0.98399, abs=1e-5)
    with pytest.raises(ValueError):
        pf_point(1.2)


def test_slope():
    assert slope_kg(0.0) == 0.0
    assert slope_kg(0.5) == pytest.approx(0.125 / 0.9375**0.75)
    assert slope_kg(0.5) == pytest.approx(0.13127, abs=1e-4)
    with pytest.raises(ValueError):
        slope_kg(1.0)


def test_slope_is_derivative_of_front():
    x = np.linspace(0.01, 0.95, 50)
    h = 1e-6
    numeric = -((1 - (x + h) ** 4) ** 0.25 - (1 - (x - h) ** 4) ** 0.25) / (2 * h)
    np.testing.assert_allclose(slope_kg(x), numeric, rtol=1e-5, atol=1e-8)


def test_front_concave():
    x = np.linspace(0.0, 0.999, 2000)
    assert np.all(np.diff(slope_kg(x)) > 0)
    f2 = (1 - x**4) ** 0.25
    assert np.all(np.diff(f2, 2) < 0)


def test_area():
    assert pf_area() == pytest.approx(pf_area_closed_form(), abs=1e-10)
    assert pf_area() == pytest.approx(0.92704, abs=1e-4)
    assert round(pf_area(), 2) == 0.93
    assert pf_area() < 1


def test_theorem3_hand_instance():
    s = make_scenario(0.1, 0.3, 0.05, math.pi / 4)
    np.testing.assert_allclose(s.W, [0.5, 0.5])
    k_zf = (s.F[1] - s.Z[1]) / (s.F[0] - s.Z[0])
    assert k_zf == pytest.approx(0.040, abs=1e-3)
    r = check_theorem(3, s)
    assert r.assumption_holds and r.inequality_holds


def test_theorem1_hand_instance():
    s = make_scenario(0.1, 0.3, 0.05, math.pi / 4)
    assert s.k_G < 5
    r = check_theorem(1, s)
    assert r.assumption_holds and r.inequality_holds


def test_theorem5_gate():
    s = make_scenario(0.1, 0.3, 0.05, math.atan(0.1), weight_guided=True)
    assert not check_theorem(5, s).assumption_holds


def test_theorem5_counterexample_above_og():
    # the ray passes above G; the stated hypothesis holds but G scores worse
    s = make_scenario(0.1, 0.3, 0.05, math.radians(85), weight_guided=True)
    r = check_theorem(5, s)
    assert r.assumption_holds and not r.inequality_holds


def test_weight_guided_point_on_quarter_circle():
    s = make_scenario(0.1, 0.3, 0.05, 0.7, weight_guided=True)
    assert math.hypot(*s.Z) == pytest.approx(math.hypot(0.05, s.G[1]), abs=1e-12)
    assert s.Z[0] * s.W[1] == pytest.approx(s.Z[1] * s.W[0], abs=1e-12)


def test_malformed_scenarios():
    good = make_scenario(0.1, 0.3, 0.05, 0.7)
    with pytest.raises(ValueError):
        check_theorem(7, good)
    bad = make_scenario(0.3, 0.1, 0.05, 0.7)  # G left of F
    with pytest.raises(ValueError):
        check_theorem(1, bad)
    off_front = type(good)((0.1, 0.5), good.G, good.Z, good.W, good.alpha, good.theta, good.k_G)
    with pytest.raises(ValueError):
        check_theorem(1, off_front)


@given(st.floats(0.001, 0.2), st.floats(0.001, 0.3), st.floats(0, 1), st.floats(0.01, 1.56),
       st.sampled_from(THEOREMS))
@settings(max_examples=300, deadline=None)
def test_mirror_invariance(F1, dG, zfrac, alpha, th):
    s = make_scenario(F1, F1 + dG, zfrac * F1, alpha, weight_guided=th >= 5)
    a, b = check_theorem(th, s), check_theorem(th, s, mirror=True)
    if not (a.tie or b.tie):
        assert a == b


@given(st.floats(0.001, 0.2), st.floats(0.001, 0.3), st.floats(0, 1), st.floats(0.01, 1.56))
@settings(max_examples=300, deadline=None)
def test_sweep_agrees_with_single_checks(F1, dG, zfrac, alpha):
    # the vectorized sweep and the scalar checker share no sampling code
    for th in (1, 2, 3, 4):
        r = check_theorem(th, make_scenario(F1, F1 + dG, zfrac * F1, alpha))
        if r.assumption_holds and not r.tie:
            assert r.inequality_holds
    r6 = check_theorem(6, make_scenario(F1, F1 + dG, zfrac * F1, alpha, weight_guided=True))
    if r6.assumption_holds and not r6.tie:
        assert r6.inequality_holds


def test_sweep_contract():
    rng = np.random.default_rng(0)
    r = theorem_sweep(3, 1000, rng)
    assert r.hypothesis_pass == 1000
    assert r.attempted >= 1000
    with pytest.raises(ValueError):
        theorem_sweep(3, 999, rng)
    a = theorem_sweep(4, 2000, np.random.default_rng(9))
    b = theorem_sweep(4, 2000, np.random.default_rng(9))
    assert a == b


def test_theorem5_holds_when_ray_below_og():
    r = theorem_sweep(5, 10_000, np.random.default_rng(1), require_w_below_g=True)
    assert r.violations == 0
