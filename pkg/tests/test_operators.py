from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refmoead.core import OperatorParams
from refmoead.operators import (
    make_offspring,
    polynomial_mutation,
    sbx_child,
    sbx_crossover,
    select_parents,
)

BOUNDS = (np.zeros(6), np.ones(6))


def test_select_parents_pair():
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert set(select_parents(np.array([0, 1]), rng)) == {0, 1}


def test_select_parents_membership_and_uniformity():
    rng = np.random.default_rng(1)
    nb = np.arange(10, 20)
    counts = Counter()
    n = 10_000
    for _ in range(n):
        a, b = select_parents(nb, rng)
        assert a != b and a in nb and b in nb
        counts.update((a, b))
    # each member fills one of the two slots with probability 0.2
    for k in nb:
        assert abs(counts[k] / n - 0.2) < 0.02


def test_select_parents_needs_two():
    with pytest.raises(ValueError):
        select_parents(np.array([3]), np.random.default_rng(0))


def test_sbx_no_crossover_returns_first_parent():
    x1, x2 = np.full(6, 0.2), np.full(6, 0.9)
    child = sbx_crossover(x1, x2, BOUNDS, OperatorParams(crossover_prob=0.0), np.random.default_rng(0))
    np.testing.assert_array_equal(child, x1)


def test_sbx_beta_one_identity():
    x1, x2 = np.array([0.2, 0.7]), np.array([0.6, 0.1])
    np.testing.assert_allclose(sbx_child(x1, x2, np.full(2, 0.5), 20.0), x1)


def test_sbx_children_mean_preserving():
    # the two SBX children are symmetric about the parents' midpoint
    rng = np.random.default_rng(2)
    x1, x2 = rng.random(6), rng.random(6)
    c = sbx_child(x1, x2, rng.random(6), 20.0)
    np.testing.assert_allclose((c + (x1 + x2 - c)) / 2, (x1 + x2) / 2)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_offspring_within_bounds(seed):
    rng = np.random.default_rng(seed)
    lo, hi = np.array([-1.0, 0.0, 2.0]), np.array([1.0, 5.0, 3.0])
    x1 = lo + rng.random(3) * (hi - lo)
    x2 = lo + rng.random(3) * (hi - lo)
    child = make_offspring(x1, x2, (lo, hi), OperatorParams(mutation_prob=1.0).resolved(3), rng)
    assert np.all(child >= lo) and np.all(child <= hi)


def test_mutation_zero_probability():
    x = np.full(6, 0.3)
    out = polynomial_mutation(x, BOUNDS, OperatorParams(mutation_prob=0.0), np.random.default_rng(0))
    np.testing.assert_array_equal(out, x)


def test_mutation_frequency():
    D = 10
    rng = np.random.default_rng(3)
    params = OperatorParams().resolved(D)
    x = np.full(D, 0.5)
    bounds = (np.zeros(D), np.ones(D))
    changed = np.zeros(D)
    n = 100_000
    for _ in range(n):
        changed += polynomial_mutation(x, bounds, params, rng) != x
    np.testing.assert_allclose(changed / n, 1 / D, rtol=0.1)


def test_mutation_distribution_concentrated():
    # at the box centre |delta| < 0.1 iff 2u > 0.9^21 (left half, and mirrored),
    # so the probability is 1 - 0.9^21 up to a ~1e-6 boundary term
    rng = np.random.default_rng(4)
    params = OperatorParams(mutation_prob=1.0)
    bounds = (np.zeros(1), np.ones(1))
    steps = np.array([polynomial_mutation(np.array([0.5]), bounds, params, rng)[0] - 0.5
                      for _ in range(5000)])
    assert abs(np.median(steps)) < 0.01
    assert np.mean(np.abs(steps) < 0.1) == pytest.approx(1 - 0.9**21, abs=0.015)
