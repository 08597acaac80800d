"""Composition combinatorics and energy functions."""

import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from reflectq import weights as wt


def test_enumerate_small():
    assert wt.enumerate_B(2, 1) == ((1, 0), (0, 1))
    assert len(wt.enumerate_B(3, 2)) == 6
    assert wt.enumerate_B(3, 2)[0] == (2, 0, 0)


def test_enumerate_counts_stars_and_bars():
    for n in range(1, 5):
        for l in range(0, 5):
            assert len(wt.enumerate_B(n, l)) == math.comb(l + n - 1, n - 1)


def test_enumerate_contains_worked_tableau():
    assert (1, 2, 1, 0, 1) in wt.enumerate_B(5, 5)
    assert wt.tableau_str((1, 2, 1, 0, 1)) == "12235"


def test_cross_example():
    assert wt.cross((1, 0, 1), (0, 1, 0)) == 1


def test_cyclic_shift_example():
    assert wt.cyclic_shift((0, 1, 1, 0, 1)) == (1, 1, 0, 1, 0)


def test_indexed_sum_example():
    assert wt.indexed_sum((1, 0, 2)) == 7


def test_stats_bundle():
    s = wt.stats((1, 0, 2), (0, 1, 0))
    assert s["total"] == 3
    assert s["indexed_sum"] == 7
    assert s["cross"] == 1
    assert s["cyclic_shift"] == (0, 2, 1)
    assert s["reverse"] == (2, 0, 1)
    assert s["truncation"] == (1, 0)


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        wt.cross((1, 0), (1, 0, 0))


def test_energy_P_example():
    assert wt.energy("P", 0, (2, 0), (1, 1)) == 1


def test_energy_Q_two_parts():
    # Q_0 for n=2 is min(beta_2, alpha_1)
    assert wt.energy("Q", 0, (2, 0), (1, 1)) == 1
    rng = random.Random(11)
    for _ in range(50):
        a = (rng.randrange(4), rng.randrange(4))
        b = (rng.randrange(4), rng.randrange(4))
        assert wt.energy_Q(0, a, b) == min(b[1], a[0])


def test_tableau_strings():
    assert wt.tableau_str((0, 1, 0, 3, 1), dual=True) == "2̄4̄4̄4̄5̄"
    assert wt.tableau_str((0, 0, 0)) == ""


@given(st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=7))
@settings(max_examples=60, deadline=None)
def test_shift_and_reverse_orders(entries):
    alpha = tuple(entries)
    n = len(alpha)
    out = alpha
    for _ in range(n):
        out = wt.cyclic_shift(out)
    assert out == alpha
    assert wt.reverse(wt.reverse(alpha)) == alpha
    assert wt.total(wt.cyclic_shift(alpha)) == wt.total(alpha)


@given(
    st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=7),
    st.integers(min_value=0, max_value=10 ** 6),
)
@settings(max_examples=60, deadline=None)
def test_bilinear_completeness(entries, seed):
    alpha = tuple(entries)
    rng = random.Random(seed)
    beta = tuple(rng.randrange(6) for _ in alpha)
    dot = sum(a * b for a, b in zip(alpha, beta))
    assert wt.cross(alpha, beta) + wt.cross(beta, alpha) + dot == wt.total(alpha) * wt.total(beta)


def test_indexed_sum_shift_identity():
    # moving a unit from slot i+1 to slot i changes the weighted sum by
    # -1 + n * [i = 0], cyclically
    n = 5
    for i in range(n):
        alpha = (3, 3, 3, 3, 3)
        shifted = wt.shift(alpha, i, i + 1)
        delta = wt.indexed_sum(shifted) - wt.indexed_sum(alpha)
        assert delta == -1 + n * (1 if i == 0 else 0)
        shifted_down = wt.shift(alpha, i + 1, i)
        assert wt.indexed_sum(shifted_down) - wt.indexed_sum(alpha) == -delta


def test_unit_and_drop():
    assert wt.unit(4, 0) == (0, 0, 0, 1)
    assert wt.unit(4, 1) == (1, 0, 0, 0)
    assert wt.drop_at((5, 6, 7), 2) == (5, 7)
