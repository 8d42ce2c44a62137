import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refmoead.core import (
    ConfigError,
    Decomposition,
    OperatorParams,
    Population,
    RunConfig,
    Strategy,
    UnsupportedDimensionError,
    build_neighborhoods,
    effective_population_size,
    generate_weights,
    lattice_divisions,
    make_rng,
    make_weight_set,
    rng_next,
)


def test_weights_m2_n3():
    np.testing.assert_allclose(generate_weights(2, 3), [[0, 1], [0.5, 0.5], [1, 0]])


def test_weights_m3_n3_are_the_vertices():
    W = generate_weights(3, 3)
    assert sorted(map(tuple, W)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_weights_m3_n100_snaps_to_105():
    assert lattice_divisions(3, 100) == 13
    assert math.comb(15, 2) == 105
    assert generate_weights(3, 100).shape == (105, 3)
    assert effective_population_size(3, 100) == 105
    assert effective_population_size(2, 100) == 100


@pytest.mark.parametrize("M", [1, 4])
def test_weights_unsupported_dimension(M):
    with pytest.raises(UnsupportedDimensionError):
        generate_weights(M, 10)


@given(st.integers(2, 3), st.integers(3, 200))
@settings(max_examples=40, deadline=None)
def test_weights_on_simplex_and_distinct(M, N):
    W = generate_weights(M, N)
    assert len(W) >= N
    assert np.all(W >= 0)
    np.testing.assert_allclose(W.sum(axis=1), 1.0, atol=1e-12)
    assert len(np.unique(W.round(12), axis=0)) == len(W)


def test_neighborhoods_hand_example():
    W = np.array([[1, 0], [0.5, 0.5], [0, 1]])
    B = build_neighborhoods(W, 2)
    assert set(B[0]) == {0, 1}
    assert [set(b) for b in build_neighborhoods(W, 3)] == [{0, 1, 2}] * 3
    np.testing.assert_array_equal(build_neighborhoods(W, 1).ravel(), [0, 1, 2])


def test_neighborhood_too_large():
    with pytest.raises(ConfigError):
        build_neighborhoods(generate_weights(2, 5), 6)


@given(st.integers(2, 3), st.integers(5, 120), st.data())
@settings(max_examples=30, deadline=None)
def test_neighborhoods_are_nearest(M, N, data):
    W = generate_weights(M, N)
    T = data.draw(st.integers(1, len(W)))
    B = build_neighborhoods(W, T)
    assert B.shape == (len(W), T)
    d = np.linalg.norm(W[:, None] - W[None], axis=2)
    for i in range(len(W)):
        assert B[i, 0] == i
        inside = d[i, B[i]].max()
        outside = np.delete(d[i], B[i])
        assert np.all(outside >= inside - 1e-12)


def test_weight_set_default_T():
    ws = make_weight_set(3, 100)
    assert (ws.N, ws.T) == (105, 11)


def test_rng_determinism_and_mean():
    a, b = make_rng(7), make_rng(7)
    assert [rng_next(a) for _ in range(100)] == [rng_next(b) for _ in range(100)]
    c, d = make_rng(1), make_rng(2)
    assert [rng_next(c) for _ in range(10)] != [rng_next(d) for _ in range(10)]
    draws = make_rng(0).random(10**6)
    assert abs(draws.mean() - 0.5) < 0.002
    assert draws.min() >= 0 and draws.max() < 1


def test_run_config_resolves_preset_dimensions():
    cfg = RunConfig("imop2", maxFE=1000)
    assert (cfg.M, cfg.D, cfg.N, cfg.T) == (2, 10, 100, 10)
    cfg3 = RunConfig("dtlz2", maxFE=1000, M=3)
    assert (cfg3.N, cfg3.T) == (105, 11)
    assert cfg.decomposition is Decomposition.MTCH
    assert cfg.refpoint_strategy is Strategy.MIN


@pytest.mark.parametrize("kw", [
    dict(maxFE=50),
    dict(maxFE=1000, T=1),
    dict(maxFE=1000, T=500),
    dict(maxFE=1000, theta=0.0),
    dict(maxFE=1000, seed=-1),
    dict(maxFE=1000, record_interval=0),
])
def test_run_config_rejects(kw):
    with pytest.raises(ConfigError):
        RunConfig("imop2", **kw)


def test_operator_params_validation_and_resolution():
    assert OperatorParams().resolved(10).mutation_prob == pytest.approx(0.1)
    with pytest.raises(ConfigError):
        OperatorParams(crossover_prob=1.5)


def test_population_accessors():
    pop = Population(np.zeros((3, 2)), np.ones((3, 2)))
    assert len(pop) == 3
    assert len(pop.members) == 3
    cp = pop.copy()
    cp.F[0, 0] = 5
    assert pop.F[0, 0] == 1
