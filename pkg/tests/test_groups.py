from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circorder.groups import (CircleRationals, CyclicGroup, DirectProduct, Ext, FreeProduct, Homomorphism,
                              Integers, Rationals, SemidirectZ, Subgroup, check_group_axioms)
from circorder.catalog import doubled_z4_descriptor

ints = st.integers(-6, 6)


@pytest.mark.parametrize("group", [
    CyclicGroup(5), Integers(), Rationals(), CircleRationals(), SemidirectZ(2), SemidirectZ(0),
    DirectProduct(Integers(), CyclicGroup(3)), FreeProduct([Integers(), CyclicGroup(2)]),
])
def test_group_axioms_on_window(group):
    assert check_group_axioms(group, bound=2).ok


def test_klein_bottle_relation():
    K = SemidirectZ(0)
    x, y = (0, 1), (1, 0)
    assert K.mul(x, K.mul(y, K.inv(x))) == K.inv(y)
    assert K.commutes(K.pow(x, 2), y)


def test_semidirect_flip_has_order_two():
    G = SemidirectZ(2)
    t = (0, 1)
    assert G.mul(t, t) == G.identity
    assert G.mul(t, G.mul((3, 0), G.inv(t))) == (-3, 0)


@given(ints, ints, ints, ints)
def test_semidirect_associative(a, b, c, d):
    K = SemidirectZ(0)
    u, v, w = (a, b), (c, d), (b, a)
    assert K.mul(K.mul(u, v), w) == K.mul(u, K.mul(v, w))


@given(st.fractions(), st.fractions())
def test_circle_rationals_stay_in_unit_interval(p, q):
    S = CircleRationals()
    p, q = p - (p.numerator // p.denominator), q - (q.numerator // q.denominator)
    r = S.mul(p, q)
    assert 0 <= r < 1
    assert S.mul(r, S.inv(q)) == p


def test_free_product_reduction_cancels_and_merges():
    F = FreeProduct([Integers(), Integers()])
    x, y = F.letter(0, 1), F.letter(1, 1)
    assert F.mul(x, F.inv(x)) == F.identity
    assert F.mul(x, x) == ((0, 2),)
    xy = F.mul(x, y)
    assert F.mul(F.inv(xy), xy) == F.identity
    assert F.normalize([(0, 1), (0, -1), (1, 3), (1, 0)]) == ((1, 3),)


def test_free_product_word_window_count():
    F = FreeProduct([Integers(), Integers()])
    assert len(F.words(2, 2)) == 1 + 8 + 32


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), max_size=6),
       st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), max_size=6))
def test_free_product_inverse_property(u, v):
    F = FreeProduct([Integers(), Integers()])
    u, v = F.normalize(u), F.normalize(v)
    assert F.mul(F.mul(u, v), F.inv(v)) == u


def test_amalgam_normal_forms():
    A = doubled_z4_descriptor().group
    a, b = A.embed(0, 1), A.embed(1, 1)
    assert A.mul(a, a) == A.mul(b, b) == A.embed_core(1)
    aba = A.mul(a, A.mul(b, a))
    assert len(aba.reps) == 3
    assert A.mul(aba, A.inv(aba)) == A.identity
    assert check_group_axioms(A, bound=2).ok


def test_subgroup_window_and_inclusion():
    G = SemidirectZ(2)
    H = Subgroup(G, lambda g: g[1] == 0, "Z")
    assert all(g[1] == 0 for g in H.window(2))
    assert H.contains((4, 0)) and not H.contains((4, 1))
    assert H.inclusion().check(2).ok


def test_homomorphism_check_finds_failure():
    Z = Integers()
    bad = Homomorphism(Z, Z, lambda k: k + 1, name="shift")
    assert not bad.check(2).ok


def test_lift_group_elements_are_pairs():
    from circorder.extensions import lift_group
    from circorder.orders import circle_standard

    E = lift_group(circle_standard(CyclicGroup(3))).group
    assert E.mul(Ext(0, 2), Ext(0, 2)) == Ext(1, 1)
    assert E.inv(Ext(0, 2)) == Ext(-1, 1)
