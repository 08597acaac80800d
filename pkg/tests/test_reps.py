"""Representation tables: generator actions, relations, duality, coideal."""

import pytest

from reflectq import weights as wt
from reflectq.exactalg import ONE, Q, P, RatFunc, qnumber, qpow
from reflectq.reps import (
    OperatorTable, Space, act_coideal, act_generator, check_defining_relations,
    check_weight_conservation, dual_pairing_check, tensor_act, tensor_coideal,
    vee_star_diagonal, vee_star_iso_check,
)

Z = RatFunc.var("z")
X = RatFunc.var("x")
Y = RatFunc.var("y")


def test_vector_action_basics():
    f1 = act_generator("V", 2, 1, "f", 1, Z)
    assert f1.coefficient(((1, 0),), ((0, 1),)) == ONE
    assert not f1.coefficient(((0, 1),), ((1, 0),))  # [alpha_1]=0 kills it
    k1 = act_generator("V", 2, 1, "k", 1, Z)
    assert k1.coefficient(((1, 0),), ((1, 0),)) == Q


def test_dual_action_derived_coefficient():
    f1 = act_generator("Vstar", 2, 1, "f", 1, Z)
    # target outside the basis drops; the surviving column carries -q^-1
    assert ((1, 0),) not in f1.entries
    assert f1.coefficient(((0, 1),), ((1, 0),)) == -qpow(-1)


def test_affine_generator_carries_spectral():
    e0 = act_generator("V", 2, 1, "e", 0, Z)
    # e_0 moves weight from slot 1 to slot n and carries z
    assert e0.coefficient(((1, 0),), ((0, 1),)) == Z
    f0 = act_generator("V", 2, 1, "f", 0, Z)
    assert f0.coefficient(((0, 1),), ((1, 0),)) == 1 / Z


@pytest.mark.parametrize("kind", ["V", "Vstar", "Vvee"])
@pytest.mark.parametrize("n,l", [(2, 1), (2, 3), (3, 2), (4, 1)])
def test_defining_relations(kind, n, l):
    assert check_defining_relations(kind, n, l).passed


@pytest.mark.parametrize("kind", ["V", "Vstar", "Vvee"])
def test_weight_conservation(kind):
    assert check_weight_conservation(kind, 3, 2).passed


@pytest.mark.parametrize("n,l", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_dual_pairing_all_generators(n, l):
    for gen in ("e", "f", "k"):
        for i in range(n):
            assert dual_pairing_check(n, l, gen, i).passed


def test_vee_star_diagonal_entry():
    d = vee_star_diagonal(2, 1)
    # entry at (1,0): (-q)^1 * (q^2;q^2)_1
    assert d[(1, 0)] == -Q * (1 - Q ** 2)


def test_vee_star_iso():
    assert vee_star_iso_check(2, 1).passed
    assert vee_star_iso_check(3, 1).passed
    assert vee_star_iso_check(2, 2).passed


def test_vee_star_iso_trivial_degree():
    d = vee_star_diagonal(3, 0)
    assert d[(0, 0, 0)] == ONE


def test_tensor_k_action_scalar():
    s1 = Space("V", 2, 1, X)
    s2 = Space("V", 2, 1, Y)
    dk = tensor_act((s1, s2), "k", 1)
    lab = ((1, 0), (1, 0))
    assert dk.coefficient(lab, lab) == Q ** 2


def test_tensor_e_action_two_terms():
    s1 = Space("V", 2, 1, X)
    s2 = Space("V", 2, 1, Y)
    de = tensor_act((s1, s2), "e", 1)
    lab = ((0, 1), (0, 1))
    col = de.entries[lab]
    # 1 x e_1 moves the second factor, e_1 x k_1 the first
    assert col[((0, 1), (1, 0))] == ONE
    assert col[((1, 0), (0, 1))] == qpow(-1)


def test_coideal_matches_three_term_combination():
    b = act_coideal("V", 2, 2, "b", 1, Z)
    e = act_generator("V", 2, 2, "e", 1, Z)
    f = act_generator("V", 2, 2, "f", 1, Z)
    k = act_generator("V", 2, 2, "k", 1, Z)
    manual = e.scale(-1) + k.compose(f).scale(Q ** 2) + k.scale(Q / (1 - Q))
    assert b.same_entries(manual)


def test_coideal_coproduct_compatibility():
    # coproduct of b_i equals b_i x k_i + 1 x (-e_i + q^2 k_i f_i); both
    # sides assembled independently from generator tables
    s1 = Space("V", 2, 1, X)
    s2 = Space("V", 2, 2, Y)
    for i in range(2):
        lhs = tensor_coideal((s1, s2), i)
        e = tensor_act((s1, s2), "e", i)
        f = tensor_act((s1, s2), "f", i)
        k = tensor_act((s1, s2), "k", i)
        rhs = e.scale(-1) + k.compose(f).scale(Q ** 2) + k.scale(Q / (1 - Q))
        assert lhs.same_entries(rhs)


def test_bprime_is_twisted_b():
    # b' = -p^-1 . (b with e -> p e, f -> p^-1 f), then q -> -p^2
    n, l = 2, 1
    for i in range(n):
        bp = act_coideal("V", n, l, "bprime", i, Z)
        e = act_generator("V", n, l, "e", i, Z)
        f = act_generator("V", n, l, "f", i, Z)
        k = act_generator("V", n, l, "k", i, Z)
        twisted = (e.scale(-P) + k.compose(f).scale(Q ** 2 / P)
                   + k.scale(Q / (1 - Q))).scale(-1 / P)
        assert bp.same_entries(twisted.substitute({"q": -P ** 2}))


def test_compose_space_mismatch_raises():
    a = act_generator("V", 2, 1, "e", 1, X)
    b = act_generator("V", 2, 1, "e", 1, Y)
    with pytest.raises(ValueError):
        a.compose(b)
