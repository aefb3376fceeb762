"""Amalgamated free products of circularly ordered groups and their lifts.

Circular orderings of an amalgam ``*_H G_i`` extending the factor orderings
correspond to left orderings of the amalgam of the lifted factors, with the
common cofinal central element ``z = (1, id)``.  This module builds the lifted
amalgam, the isomorphism ``theta`` between it and the central extension of
the amalgam by a cocycle, and both directions of the correspondence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Sequence

from .errors import PreconditionError, RepresentationError
from .extensions import cocycle_from_circular, lift_group, quotient_group, Cocycle2
from .groups import (AmalgamFactor, AmalgamGroup, CentralExtension, CircleRationals, CyclicGroup, Ext, Group,
                     Homomorphism, Word, require_injective, table_decomposition)
from .orders import (CircularOrdering, LeftOrderingWithZ, _bounded_by_z_powers, compare_circular,
                     pullback_circular, validate_circular, validate_left)
from .report import Collector, ValidationReport, merge_reports

DEFAULT_BOUND = 3


@dataclass(eq=False)
class AmalgamDescriptor:
    """Ordered factors ``(G_i, c_i)`` glued along injections ``phi_i: H -> G_i``.

    ``core_ordering`` may be omitted, in which case compatibility is checked
    pairwise and the core inherits ``phi_0^* c_0``.
    """

    core: Group
    factors: Sequence[AmalgamFactor]
    core_ordering: CircularOrdering | None = None
    name: str = "amalgam"
    _group: AmalgamGroup | None = field(default=None, repr=False)

    @property
    def group(self) -> AmalgamGroup:
        if self._group is None:
            self._group = AmalgamGroup(self.core, self.factors, self.name)
        return self._group

    def inherited_core_ordering(self, bound: int = DEFAULT_BOUND) -> CircularOrdering:
        if self.core_ordering is not None:
            return self.core_ordering
        fac = self.factors[0]
        return pullback_circular(fac.phi, fac.ordering, bound)


def check_compatibility(desc: AmalgamDescriptor, bound: int = DEFAULT_BOUND, limit: int = 10) -> ValidationReport:
    """Injectivity of each phi_i, agreement of ``phi_i^* c_i`` with the core ordering, and
    pairwise agreement ``phi_i^* c_i = phi_j^* c_j``, on all core triples of the window."""
    H = desc.core
    els = H.sample(bound)
    triples = list(itertools.product(els, repeat=3))
    col = Collector(limit)
    for i, fac in enumerate(desc.factors):
        images = {}
        for h in els:
            img = fac.phi(h)
            if img in images and images[img] != h:
                col.add("not_injective", (i, (images[img], h)))
            images.setdefault(img, h)
    pulled = [
        (lambda a, b, d, fac=fac: fac.ordering(fac.phi(a), fac.phi(b), fac.phi(d))) for fac in desc.factors
    ]
    if desc.core_ordering is not None:
        for i, p in enumerate(pulled):
            for t in triples:
                if p(*t) != desc.core_ordering(*t):
                    col.add("not_order_preserving", t, factor=i, values=[desc.core_ordering(*t), p(*t)])
                    break
    for i, j in itertools.combinations(range(len(pulled)), 2):
        for t in triples:
            if pulled[i](*t) != pulled[j](*t):
                col.add("incompatible", t, factors=[i, j], values=[pulled[i](*t), pulled[j](*t)])
                break
    return col.report({"core_elements": len(els), "triples": len(triples), "factors": len(desc.factors)})


# coset decompositions for common factor types

def finite_decomposition(factor: Group, core: Group, phi: Homomorphism, transversal: Sequence | None = None):
    """Table decomposition; the default transversal takes the first element of each right coset."""
    if transversal is None:
        image = [phi(h) for h in core.elements()]
        seen, transversal = set(), []
        for g in factor.elements():
            if g in seen:
                continue
            transversal.append(g)
            seen.update(factor.mul(x, g) for x in image)
        if factor.identity in transversal:
            transversal.remove(factor.identity)
        transversal.insert(0, factor.identity)
    return table_decomposition(factor, core, phi, transversal)


def circle_decomposition(core: CyclicGroup, phi: Homomorphism):
    """Decomposition of Q/Z over the image of an injective map from Z/m; reps lie in ``[0, 1/m)``."""
    m = core.n
    inverse = {phi(h): h for h in core.elements()}
    if len(inverse) != m or any(q * m % 1 for q in inverse):
        raise RepresentationError("image of the core is not the subgroup of m-th roots")

    def decompose(g: Fraction):
        base = Fraction((g * m).__floor__(), m)
        return inverse[base], g - base

    return decompose


# lifted amalgam

@dataclass(eq=False)
class LiftedAmalgam:
    desc: AmalgamDescriptor
    group: AmalgamGroup
    z: Word
    factor_lifts: list  # LeftOrderingWithZ per factor
    core_lift: LeftOrderingWithZ
    embeddings: list

    def lift_word(self, w: Word) -> Word:
        """Integer coordinate zero on every piece of a normal form of the base amalgam."""
        return Word(Ext(0, w.core), tuple((i, Ext(0, r)) for i, r in w.reps))

    def erase(self, w: Word) -> Word:
        return Word(w.core.a, tuple((i, r.a) for i, r in w.reps))


def _lifted_decomposition(fac: AmalgamFactor, f: Callable):
    G = fac.group

    def decompose(x: Ext):
        h, rep = fac.decompose(x.a)
        return Ext(x.n - f(fac.phi(h), rep), h), Ext(0, rep)

    return decompose


def build_lifted_amalgam(desc: AmalgamDescriptor, bound: int = DEFAULT_BOUND, check: bool = True) -> LiftedAmalgam:
    """Amalgam of the lifts of the factors along ``(n, h) -> (n, phi_i(h))``.

    The factor lifts share the central element ``(1, id)`` of the lifted core,
    which becomes z.
    """
    if check:
        rep = check_compatibility(desc, bound)
        if not rep.ok:
            raise PreconditionError("factor orderings are not compatible", rep.witness)
    core_lo = lift_group(desc.inherited_core_ordering(bound))
    core_E = core_lo.group
    lifts, lifted_factors = [], []
    for i, fac in enumerate(desc.factors):
        lo = lift_group(fac.ordering)
        E = lo.group
        phi = Homomorphism(core_E, E, lambda x, p=fac.phi: Ext(x.n, p(x.a)), injective=True,
                           name=f"~{fac.phi.name}")
        if check:
            hc = phi.check(min(bound, 2))
            if not hc.ok:
                raise PreconditionError(f"lifted map of factor {i} is not a homomorphism", hc.witness)
        lifts.append(lo)
        lifted_factors.append(AmalgamFactor(E, phi, _lifted_decomposition(fac, E.f), ordering=lo))
    group = AmalgamGroup(core_E, lifted_factors, f"~({desc.name})")
    z = Word(core_lo.z, ())
    embeddings = [group.embedding(i) for i in range(len(lifted_factors))]
    la = LiftedAmalgam(desc, group, z, lifts, core_lo, embeddings)
    if check:
        for i, lo in enumerate(lifts):
            if embeddings[i](lo.z) != z:
                raise PreconditionError(f"factor {i} does not send its z to the common z", i)
        for w in group.window(min(bound, 2)):
            if not group.commutes(z, w):
                raise PreconditionError("z is not central", w)
    return la


# theta

def check_cocycle_extends(la: LiftedAmalgam, f: Cocycle2, bound: int = DEFAULT_BOUND) -> None:
    """``f(delta_i a, delta_i b) = f_{c_i}(a, b)`` on factor windows, else PreconditionError."""
    A = la.desc.group
    for i, fac in enumerate(la.desc.factors):
        fi = la.factor_lifts[i].group.f
        els = fac.group.sample(bound)
        for a in els:
            for b in els:
                if f(A.embed(i, a), A.embed(i, b)) != fi(a, b):
                    raise PreconditionError(f"cocycle does not restrict to factor {i}", (i, a, b))


def theta(la: LiftedAmalgam, f: Cocycle2, bound: int = DEFAULT_BOUND, check: bool = True):
    """The isomorphism from the lifted amalgam to the central extension of the amalgam by f.

    Returns ``(target_group, theta, theta_inverse)``.  On a normal form
    ``(n, h)(0, g_1)...(0, g_k)`` the integer coordinate of the image is n plus
    the sum of ``f(h g_1 ... g_(i-1), g_i)``.
    """
    A = la.desc.group
    if check:
        check_cocycle_extends(la, f, bound)
    target = CentralExtension(A, f.f, name=f"{A.name}~f", check_bound=1)

    def correction(w: Word) -> int:
        total = 0
        prefix = A.embed_core(w.core)
        for i, r in w.reps:
            g = A.embed(i, r)
            total += f(prefix, g)
            prefix = A.mul(prefix, g)
        return total

    def forward(u: Word) -> Ext:
        base = la.erase(u)
        return Ext(u.core.n + correction(base), base)

    def backward(x: Ext) -> Word:
        w = x.a
        lifted = la.lift_word(w)
        return Word(Ext(x.n - correction(w), w.core), lifted.reps)

    fwd = Homomorphism(la.group, target, forward, injective=True, name="theta")
    bwd = Homomorphism(target, la.group, backward, injective=True, name="theta^-1")
    return target, fwd, bwd


def check_theta(la: LiftedAmalgam, f: Cocycle2, bound: int = 2, max_reps: int = 2) -> ValidationReport:
    """Homomorphism, mutual inverse and factor-inclusion checks for theta on windows."""
    target, fwd, bwd = theta(la, f, bound)
    words = la.group.words(max_reps, bound)
    col = Collector()
    for u in words:
        tu = fwd(u)
        if bwd(tu) != u:
            col.add("inverse", u)
        for v in words:
            if fwd(la.group.mul(u, v)) != target.mul(tu, fwd(v)):
                col.add("homomorphism", (u, v))
    A = la.desc.group
    for i, lo in enumerate(la.factor_lifts):
        for x in lo.group.window(bound):
            if fwd(la.embeddings[i](x)) != Ext(x.n, A.embed(i, x.a)):
                col.add("factor_inclusion", (i, x))
    return col.report({"words": len(words), "pairs": len(words) ** 2})


# the two directions of the correspondence

def check_extends_lifts(la: LiftedAmalgam, lo: LeftOrderingWithZ, bound: int = DEFAULT_BOUND,
                        power_bound: int = 1 << 10) -> ValidationReport:
    """lo agrees with each lifted factor ordering on its window, ``lo.z`` is the common z,
    and z is cofinal on the word window."""
    col = Collector()
    if lo.z != la.z:
        col.add("z_mismatch", lo.z)
    for i, flo in enumerate(la.factor_lifts):
        for x in flo.group.window(bound):
            if flo.positive(x) != lo.positive(la.embeddings[i](x)):
                col.add("does_not_extend", (i, x))
    words = la.group.words(bound, min(bound, 2))
    for w in words:
        if not _bounded_by_z_powers(lo, w, power_bound):
            col.add("not_cofinal", w)
    return col.report({"factor_windows": len(la.factor_lifts), "words": len(words)})


def check_extends_factors(desc: AmalgamDescriptor, c: CircularOrdering, bound: int = DEFAULT_BOUND) -> ValidationReport:
    """``c(delta_i a, delta_i b, delta_i d) = c_i(a, b, d)`` on every factor window."""
    A = desc.group
    col = Collector()
    region = {}
    for i, fac in enumerate(desc.factors):
        els = fac.group.sample(bound)
        region[f"factor_{i}_triples"] = len(els) ** 3
        emb = {g: A.embed(i, g) for g in els}
        for t in itertools.product(els, repeat=3):
            if c(*(emb[g] for g in t)) != fac.ordering(*t):
                col.add("does_not_extend", t, factor=i)
    return col.report(region)


def derive_circular_on_amalgam(la: LiftedAmalgam, lo: LeftOrderingWithZ, bound: int = DEFAULT_BOUND,
                               check: bool = True) -> CircularOrdering:
    """Circular ordering of the base amalgam from a left ordering of the lifted one.

    The quotient ordering of ``lo`` is read on the base amalgam by giving every
    piece of a normal form integer coordinate zero.
    """
    if check:
        rep = check_extends_lifts(la, lo, bound)
        if not rep.ok:
            raise PreconditionError("left ordering does not extend the lifted factor orderings", rep.witness)
    qc = quotient_group(lo)
    lift = la.lift_word
    A = la.desc.group
    c = CircularOrdering(A, lambda a, b, d: qc(lift(a), lift(b), lift(d)), f"c_{lo.name}")
    if check:
        for u in A.words(2, 2):
            for v in A.words(2, 2):
                if la.erase(lo.minrep(la.group.mul(lift(u), lift(v)))) != A.mul(u, v):
                    raise PreconditionError("erasing the integer coordinate is not multiplicative", (u, v))
    return c


def derive_left_on_lifted_amalgam(la: LiftedAmalgam, c: CircularOrdering, bound: int = DEFAULT_BOUND,
                                  check: bool = True) -> LeftOrderingWithZ:
    """Left ordering of the lifted amalgam: the lift cone of ``(amalgam, c)`` pulled back through theta."""
    if check:
        rep = check_extends_factors(la.desc, c, bound)
        if not rep.ok:
            raise PreconditionError("circular ordering does not extend the factor orderings", rep.witness)
    f = cocycle_from_circular(c)
    _, fwd, _ = theta(la, f, bound, check=check)
    e = la.group.identity

    def positive(w):
        return w != e and fwd(w).n >= 0

    return LeftOrderingWithZ(la.group, positive, f"<_{c.name}", z=la.z, z_floor=lambda w: fwd(w).n)


def bijection_roundtrip(la: LiftedAmalgam, lo: LeftOrderingWithZ, bound: int = DEFAULT_BOUND,
                        max_reps: int = 3) -> ValidationReport:
    """Left ordering -> circular ordering -> left ordering reproduces cone membership, and the
    circular ordering survives the opposite round trip on all windowed triples."""
    c = derive_circular_on_amalgam(la, lo, bound)
    lo2 = derive_left_on_lifted_amalgam(la, c, bound)
    c2 = derive_circular_on_amalgam(la, lo2, bound, check=False)
    col = Collector()
    lifted_words = la.group.words(max_reps, 2)
    for w in lifted_words:
        if lo.positive(w) != lo2.positive(w):
            col.add("cone", w)
    words = la.desc.group.words(max_reps, 2)
    bad = compare_circular(c, c2, words)
    if bad is not None:
        col.add("circular", bad)
    return col.report({"lifted_words": len(lifted_words), "triples": len(words) ** 3})
