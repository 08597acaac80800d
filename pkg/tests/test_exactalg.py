"""Exact arithmetic core: canonical forms, q-calculus, series, limits."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reflectq.exactalg import (
    ONE, P, PowerSeries, Q, RatFunc, WVAR, XVAR, YVAR, ZERO, ZVAR,
    hyper_phi_series, pochhammer, qbinomial, qcalc, qnumber, qpow, series_ops,
)


def test_add_common_denominator_canonicalized():
    got = (Q / (1 - Q)) + (1 / (1 - Q))
    # positive-leading-denominator convention: (q+1)/(1-q) -> -(q+1)/(q-1)
    assert got.num_str() == "-1 - q"
    assert got.den_str() == "-1 + q"
    assert got == (1 + Q) / (1 - Q)


def test_mul_inverse_is_one():
    assert (XVAR * (1 / XVAR)).is_one()


def test_gcd_reduction_on_construction():
    assert ((1 - Q ** 2) / (1 - Q)) == 1 + Q


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO ** -1


def test_substitute_composition():
    f = 1 / (Q + ZVAR)
    g = f.substitute({"z": 1 / (XVAR * YVAR)})
    assert g == (XVAR * YVAR) / (Q * XVAR * YVAR + 1)


def test_substitute_q_to_minus_p_squared():
    assert (Q ** 2).substitute({"q": -P ** 2}) == P ** 4


def test_substitute_empty_is_identity():
    f = (1 + Q * ZVAR) / (Q - ZVAR)
    assert f.substitute({}) == f


def test_substitute_vanishing_denominator_raises():
    f = 1 / (1 - Q)
    with pytest.raises(ZeroDivisionError):
        f.substitute({"q": ONE})


@pytest.mark.parametrize(
    "f,var,order,leading",
    [
        ((Q ** 2 + Q ** 3) / (1 - Q), "q", 2, ONE),
        (ZVAR / (Q + ZVAR), "q", 0, ONE),
        (Q / (Q ** 2 * (1 + ZVAR)), "q", -1, 1 / (1 + ZVAR)),
    ],
)
def test_lowest_order_examples(f, var, order, leading):
    o, lead = f.lowest_order(var)
    assert o == order
    assert lead == leading


def test_lowest_order_of_zero_raises():
    with pytest.raises(ValueError):
        ZERO.lowest_order("q")


def test_qnumber_two():
    assert qnumber(2) == (Q ** 2 + 1) / Q
    assert qnumber(2).num_str() == "1 + q^2"
    assert qnumber(2).den_str() == "q"


def test_pochhammer_minus_q():
    # appears in the l=1 matrix product operators
    assert pochhammer(-Q, Q, 2) == (1 + Q) * (1 + Q ** 2)


def test_qbinomial_basic():
    assert qbinomial(2, 1) == 1 + Q
    assert qbinomial(3, 1, Q ** 2) == 1 + Q ** 2 + Q ** 4
    assert qbinomial(2, 5) == ZERO


def test_pochhammer_negative_order_raises():
    with pytest.raises(ValueError):
        pochhammer(Q, Q, -1)


def test_qcalc_dispatch():
    assert qcalc("qnumber", 3) == qnumber(3)
    assert qcalc("pochhammer", Q, Q, 2) == pochhammer(Q, Q, 2)
    assert qcalc("qbinomial", 4, 2) == qbinomial(4, 2)
    with pytest.raises(ValueError):
        qcalc("nope")


def test_series_product_trivial():
    a = PowerSeries.expand(1 + WVAR, "w", 2)
    b = PowerSeries.expand(1 - WVAR, "w", 2)
    prod = series_ops(a, b, "mul", 2)
    assert prod.coeffs == [ONE, ZERO, -ONE]


def test_series_geometric():
    s = PowerSeries.expand(1 / (1 - WVAR), "w", 3)
    assert s.coeffs == [ONE, ONE, ONE, ONE]


def test_series_variable_mismatch():
    a = PowerSeries.constant("w", 1, 2)
    b = PowerSeries.constant("z", 1, 2)
    with pytest.raises(ValueError):
        series_ops(a, b, "add", 2)


def test_phi_product_matches_convolution_oracle():
    # independent oracle: double-sum convolution of the raw coefficient
    # ladders, computed with Fractions only
    qv = Fraction(2, 7)
    a1, b1, c1 = Fraction(3, 5), Fraction(-3, 5), Fraction(1, 4)
    a2, b2, c2 = Fraction(1, 3), Fraction(-2, 3), Fraction(5, 8)
    order = 8

    def ladder(a, b, c):
        ts = [Fraction(1)]
        for m in range(order):
            ts.append(ts[-1] * (1 - a * qv ** m) * (1 - b * qv ** m)
                      / ((1 - qv ** (m + 1)) * (1 - c * qv ** m)))
        return ts

    t1, t2 = ladder(a1, b1, c1), ladder(a2, b2, c2)
    expected = [sum((t1[j] * t2[k - j] for j in range(k + 1)), Fraction(0))
                for k in range(order + 1)]

    s1 = hyper_phi_series(RatFunc.from_fraction(a1), RatFunc.from_fraction(b1),
                          RatFunc.from_fraction(c1), RatFunc.from_fraction(qv), 1, "w", order)
    s2 = hyper_phi_series(RatFunc.from_fraction(a2), RatFunc.from_fraction(b2),
                          RatFunc.from_fraction(c2), RatFunc.from_fraction(qv), 1, "w", order)
    prod = s1 * s2
    for k in range(order + 1):
        assert prod.coeffs[k] == Fraction(expected[k])


# -- property tests ----------------------------------------------------------

_atoms = [Q, ZVAR, XVAR, ONE + Q, 1 - Q * ZVAR, qpow(-1), 2 * ONE]


def _random_expr(rng, depth=4):
    if depth == 0:
        return rng.choice(_atoms)
    op = rng.randrange(3)
    a = _random_expr(rng, depth - 1)
    b = _random_expr(rng, depth - 1)
    if op == 0:
        return a + b
    if op == 1:
        return a - b
    return a * b


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=40, deadline=None)
def test_canonicality_association_independent(seed):
    # same expression assembled in different association orders must produce
    # identical stored (num, den) pairs
    rng = random.Random(seed)
    terms = [_random_expr(rng, 3) for _ in range(4)]
    left = ((terms[0] + terms[1]) + terms[2]) + terms[3]
    right = terms[0] + (terms[1] + (terms[2] + terms[3]))
    assert left.num_str() == right.num_str()
    assert left.den_str() == right.den_str()

    pleft = ((terms[0] * terms[1]) * terms[2]) * terms[3]
    pright = terms[0] * (terms[1] * (terms[2] * terms[3]))
    assert pleft == pright
    assert pleft.num_str() == pright.num_str()


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=30, deadline=None)
def test_substitute_monomial_swap_roundtrip(seed):
    rng = random.Random(seed)
    f = _random_expr(rng, 3)
    swapped = f.substitute({"q": ZVAR, "z": Q})
    assert swapped.substitute({"q": ZVAR, "z": Q}) == f


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=30, deadline=None)
def test_lowest_order_multiplicative(seed):
    rng = random.Random(seed)
    f = _random_expr(rng, 3)
    g = _random_expr(rng, 3)
    if f.is_zero() or g.is_zero():
        return
    of, lf = f.lowest_order("q")
    og, lg = g.lowest_order("q")
    oh, lh = (f * g).lowest_order("q")
    assert oh == of + og
    assert lh == lf * lg


@given(st.integers(min_value=0, max_value=40))
@settings(max_examples=20, deadline=None)
def test_pochhammer_recursion(m):
    x = 1 + Q * ZVAR
    assert pochhammer(x, Q, m % 8 + 1) == pochhammer(x, Q, m % 8) * (1 - x * Q ** (m % 8))


def test_eval_rational():
    f = (1 + Q) / (1 - Q)
    assert f.eval_rational({"q": Fraction(1, 3)}) == 2
    with pytest.raises(ZeroDivisionError):
        f.eval_rational({"q": Fraction(1)})
    with pytest.raises(ValueError):
        (Q + ZVAR).eval_rational({"q": Fraction(1, 2)})
