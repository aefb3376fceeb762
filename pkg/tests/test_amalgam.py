import dataclasses
import itertools
from fractions import Fraction

import pytest

from circorder.amalgam import (build_lifted_amalgam, check_compatibility, check_extends_factors,
                               check_extends_lifts, check_theta, derive_circular_on_amalgam,
                               derive_left_on_lifted_amalgam, finite_decomposition, theta)
from circorder.catalog import (cyclic_hom, doubled_z4_descriptor, fifths_descriptor, klein_hom_on_lifted_amalgam,
                               klein_left_on_lifted_amalgam)
from circorder.errors import PreconditionError
from circorder.extensions import cocycle_from_circular
from circorder.groups import CircleRationals, CyclicGroup, Ext
from circorder.orders import CircularOrdering, klein_lex_left


@pytest.fixture(scope="module")
def lifted():
    return build_lifted_amalgam(doubled_z4_descriptor(), bound=2)


@pytest.fixture(scope="module")
def klein_order(lifted):
    return klein_left_on_lifted_amalgam(lifted)


@pytest.fixture(scope="module")
def derived(lifted, klein_order):
    return derive_circular_on_amalgam(lifted, klein_order, bound=2)


def test_doubled_z4_is_compatible():
    rep = check_compatibility(doubled_z4_descriptor())
    assert rep.ok


@pytest.mark.parametrize("r1,r2", list(itertools.product((False, True), repeat=2)))
def test_fifths_descriptor_incompatible(r1, r2):
    rep = check_compatibility(fifths_descriptor(r1, r2))
    assert rep.status == "fail"
    assert rep.violations[0]["kind"] == "incompatible"


def test_fifths_refuses_to_lift():
    with pytest.raises(PreconditionError):
        build_lifted_amalgam(fifths_descriptor())


def test_cyclic_hom_checks_order():
    with pytest.raises(ValueError):
        cyclic_hom(CyclicGroup(5), CircleRationals(), Fraction(1, 3))


def test_finite_decomposition_round_trip():
    G, H = CyclicGroup(4), CyclicGroup(2)
    phi = cyclic_hom(H, G, 2)
    dec = finite_decomposition(G, H, phi, [0, 1])
    for g in G.elements():
        h, r = dec(g)
        assert r in (0, 1) and G.mul(phi(h), r) == g


def test_lifted_amalgam_relations(lifted):
    L = lifted.group
    a, b = lifted.embeddings[0](Ext(0, 1)), lifted.embeddings[1](Ext(0, 1))
    assert L.pow(a, 2) == L.pow(b, 2)
    assert L.pow(a, 4) == L.pow(b, 4) == lifted.z
    assert L.mul(a, b) != L.mul(b, a)


def test_klein_map_is_homomorphism(lifted):
    hom = klein_hom_on_lifted_amalgam(lifted)
    assert hom.check(2).ok
    assert hom(lifted.z) == klein_lex_left(z_power=4).z


def test_klein_order_extends_lifts(lifted, klein_order):
    assert check_extends_lifts(lifted, klein_order, bound=2).ok


def test_wrong_left_order_is_rejected(lifted, klein_order):
    L = lifted.group
    squared = dataclasses.replace(klein_order, z=L.mul(lifted.z, lifted.z))
    assert check_extends_lifts(lifted, squared, bound=2).violations[0]["kind"] == "z_mismatch"
    with pytest.raises(PreconditionError):
        derive_circular_on_amalgam(lifted, squared, bound=2)


def test_derived_ordering_extends_std(derived):
    desc = doubled_z4_descriptor()
    assert check_extends_factors(desc, derived, bound=2).ok
    A = desc.group
    assert derived(A.identity, A.embed(0, 1), A.embed(0, 2)) == 1


def test_theta_for_derived_cocycle(lifted, derived):
    f = cocycle_from_circular(derived)
    assert check_theta(lifted, f, bound=2, max_reps=2).ok
    _, fwd, bwd = theta(lifted, f, bound=2)
    assert fwd(lifted.z) == Ext(1, lifted.desc.group.identity)


def test_derived_left_order_matches_klein_on_window(lifted, klein_order, derived):
    lo2 = derive_left_on_lifted_amalgam(lifted, derived, bound=2)
    for w in lifted.group.words(2, 2):
        assert lo2.positive(w) == klein_order.positive(w)


def test_derive_left_requires_extension(lifted):
    A = lifted.desc.group
    c = CircularOrdering(A, lambda u, v, w: 0, "zero")
    with pytest.raises(PreconditionError):
        derive_left_on_lifted_amalgam(lifted, c, bound=2)
