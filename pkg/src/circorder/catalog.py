"""Ready-made ordered groups used by the tests, scripts and CLI."""
from __future__ import annotations

from fractions import Fraction

from .amalgam import AmalgamDescriptor, LiftedAmalgam, circle_decomposition, finite_decomposition
from .freeproduct import fp_circular
from .groups import (AmalgamFactor, CircleRationals, CyclicGroup, DirectProduct, Homomorphism, Integers,
                     SemidirectZ)
from .orders import (LeftOrderingWithZ, circle_standard, klein_lex_left, lexicographic_left, linear_circular,
                     pullback_left, semidirect_lex_circular)


def cyclic_hom(core: CyclicGroup, target, image_of_one, name: str = "phi") -> Homomorphism:
    """The homomorphism from Z/m sending 1 to ``image_of_one``; injective iff that image has order m."""
    order = 1
    g = image_of_one
    while g != target.identity:
        g = target.mul(g, image_of_one)
        order += 1
        if order > core.n:
            break
    if order != core.n:
        raise ValueError(f"image of 1 has order {order}, not {core.n}")
    return Homomorphism(core, target, lambda h: target.pow(image_of_one, h), injective=True, name=name)


def doubled_z4_descriptor() -> AmalgamDescriptor:
    """``Z/4 *_{Z/2} Z/4`` with standard orderings, the core sent to {0, 2}, transversal {0, 1}."""
    H, G = CyclicGroup(2), CyclicGroup(4)
    factors = []
    for i in range(2):
        phi = cyclic_hom(H, G, 2, f"phi_{i}")
        factors.append(AmalgamFactor(G, phi, finite_decomposition(G, H, phi, [0, 1]), circle_standard(G)))
    return AmalgamDescriptor(H, factors, circle_standard(H), "Z/4 *_{Z/2} Z/4")


def fifths_descriptor(reverse_first: bool = False, reverse_second: bool = False) -> AmalgamDescriptor:
    """Two copies of Q/Z glued along Z/5 with ``1 -> 1/5`` and ``1 -> 2/5``; no core ordering."""
    H, G = CyclicGroup(5), CircleRationals()
    factors = []
    for i, (step, rev) in enumerate(((1, reverse_first), (2, reverse_second))):
        phi = cyclic_hom(H, G, Fraction(step, 5), f"phi_{i}")
        co = circle_standard(G)
        if rev:
            co = co.reversed()
        factors.append(AmalgamFactor(G, phi, circle_decomposition(H, phi), co))
    return AmalgamDescriptor(H, factors, None, "Q/Z *_{Z/5} Q/Z")


def klein_hom_on_lifted_amalgam(la: LiftedAmalgam) -> Homomorphism:
    """Map of the lifted doubled-Z/4 amalgam into K: the factors go to powers of x and of xy.

    A factor element ``(n, r)`` of the lift of Z/4 is the ``4n + r``-th power of
    the factor generator; a core element ``(n, h)`` is ``x^(2(2n + h))``.
    """
    K = SemidirectZ(0)
    gens = [(0, 1), K.mul((0, 1), (1, 0))]
    orders = [f.group.base.n for f in la.group.factors]

    def apply(w):
        out = K.pow((0, 1), 2 * (2 * w.core.n + w.core.a))
        for i, r in w.reps:
            out = K.mul(out, K.pow(gens[i], orders[i] * r.n + r.a))
        return out

    return Homomorphism(la.group, K, apply, injective=True, name="to_K")


def klein_left_on_lifted_amalgam(la: LiftedAmalgam, bound: int = 2) -> LeftOrderingWithZ:
    """Pull the lexicographic order of K (z = x^4) back to the lifted amalgam."""
    hom = klein_hom_on_lifted_amalgam(la)
    return pullback_left(hom, klein_lex_left(z_power=4), z=la.z, bound=bound)


def integer_free_product():
    """``Z * Z`` with the ordering induced from the usual order on each factor."""
    Z = Integers()
    return fp_circular(linear_circular(Z), linear_circular(Z))


def integer_lex_left(z=(0, 1)) -> LeftOrderingWithZ:
    """Z x Z ordered by the second coordinate, then the first."""
    ZZ = DirectProduct(Integers(), Integers())
    floor = None
    if z == (0, 1):
        floor = lambda g: g[1] if g[0] >= 0 else g[1] - 1
    return lexicographic_left(ZZ, z, z_floor=floor, check_bound=4 if z == (0, 1) else None)


def semidirect_c2():
    return semidirect_lex_circular(SemidirectZ(2))
