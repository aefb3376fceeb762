"""Integer 2-cocycles, the lift and quotient constructions, and sectioned central extensions.

The lift turns a circularly ordered group ``(G, c)`` into the central
extension ``G~`` of G by Z built from the cocycle ``f_c``, left ordered with
cofinal central ``z = (1, id)``.  The quotient goes back: a left ordered group
with cofinal central z induces a circular ordering on ``G/<z>`` by comparing
minimal coset representatives.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import sympy

from .errors import IndeterminateError, PreconditionError, RepresentationError, SizeGuardError
from .groups import CentralExtension, Ext, Group, Homomorphism, Subgroup, require_injective
from .orders import (CircularOrdering, ConvexCone, LeftOrderingWithZ, compare_circular, conjugate_circular,
                     conjugate_left, convex_positive_cone, pullback_circular, sign_by, validate_circular)
from .report import Collector, ValidationReport, Verdict, merge_reports

DEFAULT_BOUND = 3


@dataclass(eq=False)
class Cocycle2:
    group: Group
    f: Callable[[Any, Any], int]
    name: str = "f"

    def __call__(self, a, b) -> int:
        return self.f(a, b)

    def check(self, bound: int = DEFAULT_BOUND, elements: Sequence | None = None,
              limit: int = 10) -> ValidationReport:
        """Normalization and the four-term cocycle identity on all checked pairs and triples."""
        G = self.group
        els = tuple(elements) if elements is not None else G.sample(bound)
        e = G.identity
        col = Collector(limit)
        for g in els:
            if self.f(e, g) != 0 or self.f(g, e) != 0:
                col.add("normalization", g)
        for a, b, c in itertools.product(els, repeat=3):
            ab, bc = G.mul(a, b), G.mul(b, c)
            if self.f(b, c) - self.f(ab, c) + self.f(a, bc) - self.f(a, b):
                col.add("cocycle", (a, b, c))
        return col.report({"elements": len(els), "triples": len(els) ** 3})

    def table(self, elements: Sequence | None = None) -> dict:
        els = tuple(elements) if elements is not None else self.group.elements()
        return {(a, b): self.f(a, b) for a in els for b in els}

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return Cocycle2(self.group, lambda a, b: self.f(a, b) - other.f(a, b), f"{self.name}-{other.name}")

    def pullback(self, phi: Homomorphism) -> "Cocycle2":
        return Cocycle2(phi.source, lambda a, b: self.f(phi(a), phi(b)), f"{phi.name}^*{self.name}")

    def disagreement(self, other: "Cocycle2", elements: Sequence) -> tuple | None:
        for a in elements:
            for b in elements:
                if self.f(a, b) != other.f(a, b):
                    return (a, b)
        return None


def cocycle_from_circular(co: CircularOrdering) -> Cocycle2:
    """The cocycle ``f_c``: 0 on identities and where ``c(id, a, ab) = 1``, otherwise 1."""
    G = co.group
    e = G.identity

    def f(a, b):
        if a == e or b == e:
            return 0
        ab = G.mul(a, b)
        if ab == e:
            return 1
        return 0 if co(e, a, ab) == 1 else 1

    return Cocycle2(G, f, f"f_{co.name}")


def lift_group(co: CircularOrdering, check_bound: int = 2) -> LeftOrderingWithZ:
    """Left ordering of ``G~`` with cone ``{(n, a) : n >= 0} - {(0, id)}`` and ``z = (1, id)``."""
    G = co.group
    e = G.identity
    fc = cocycle_from_circular(co)
    E = CentralExtension(G, fc.f, name=f"~{G.name}", check_bound=check_bound)
    E.circular = co
    E.cocycle = fc
    return LeftOrderingWithZ(E, lambda x: x.n > 0 or (x.n == 0 and x.a != e), f"<_{co.name}",
                             z=Ext(1, e), z_floor=lambda x: x.n)


def lift_hom(phi: Homomorphism, source: CircularOrdering, target: CircularOrdering,
             bound: int = DEFAULT_BOUND) -> Homomorphism:
    """``(n, a) -> (n, phi(a))`` between the lifts of an order-preserving phi."""
    els = source.group.sample(bound)
    pulled = pullback_circular(phi, target, bound)
    bad = compare_circular(source, pulled, els)
    if bad is not None:
        raise PreconditionError(f"{phi.name} is not order-preserving", bad)
    src, tgt = lift_group(source), lift_group(target)
    hom = Homomorphism(src.group, tgt.group, lambda x: Ext(x.n, phi(x.a)), injective=True,
                       name=f"~{phi.name}")
    if hom(src.z) != tgt.z:
        raise PreconditionError("lifted map does not preserve z", src.z)
    for x in src.group.window(min(bound, 2)):
        if src.positive(x) != tgt.positive(hom(x)):
            raise PreconditionError("lifted map is not order-preserving", x)
    return hom


# quotient construction

class QuotientGroup(Group):
    """``G/<z>`` with each coset stored as its minimal representative in ``[id, z)``."""

    def __init__(self, lo: LeftOrderingWithZ):
        self.lo = lo
        self.parent = lo.group
        self.identity = lo.group.identity
        self.name = f"{lo.group.name}/<z>"

    @property
    def key(self):
        return ("quotient", self.parent.key, id(self.lo))

    def rep(self, g):
        return self.lo.minrep(g)

    def mul(self, a, b):
        return self.lo.minrep(self.parent.mul(a, b))

    def inv(self, a):
        return self.lo.minrep(self.parent.inv(a))

    def window(self, bound):
        out = []
        seen = set()
        for g in self.parent.sample(bound):
            r = self.lo.minrep(g)
            if r not in seen:
                seen.add(r)
                out.append(r)
        return tuple(out)

    def contains(self, g):
        return self.parent.contains(g) and self.lo.floor(g) == 0

    def decode(self, data):
        from .serialization import decode_element

        return self.lo.minrep(decode_element(self.parent, data))


def quotient_group(lo: LeftOrderingWithZ) -> CircularOrdering:
    """Circular ordering of ``G/<z>``: the sign of the permutation sorting minimal representatives.

    Arguments may be any coset representatives.
    """
    Q = QuotientGroup(lo)
    minrep = lo.minrep

    def c(a, b, d):
        a, b, d = minrep(a), minrep(b), minrep(d)
        if a == b or b == d or a == d:
            return 0
        return sign_by(lo.less, a, b, d)

    return CircularOrdering(Q, c, f"c_{lo.name}")


def cocycle_from_leftorder(lo: LeftOrderingWithZ) -> Cocycle2:
    """``f_<(a<z>, b<z>) = floor(abar * bbar)``."""
    Q = QuotientGroup(lo)
    G = lo.group
    return Cocycle2(Q, lambda a, b: lo.floor(G.mul(lo.minrep(a), lo.minrep(b))), f"f_{lo.name}")


# sectioned central extensions

@dataclass(eq=False)
class SectionedCentralExtension:
    """``1 -> Z -> E -> G -> 1`` with a set-theoretic section ``s`` fixing the identity.

    ``iota_log`` inverts ``iota`` on its image and raises RepresentationError elsewhere.
    """

    E: Group
    G: Group
    iota: Callable[[int], Any]
    pi: Homomorphism
    s: Callable[[Any], Any]
    iota_log: Callable[[Any], int]

    def check(self, bound: int = DEFAULT_BOUND) -> ValidationReport:
        col = Collector()
        E, G = self.E, self.G
        if self.s(G.identity) != E.identity:
            col.add("section_identity", G.identity)
        for g in G.sample(bound):
            if self.pi(self.s(g)) != g:
                col.add("section", g)
        one = self.iota(1)
        for x in E.sample(bound):
            if not E.commutes(one, x):
                col.add("not_central", x)
        if self.pi(one) != G.identity:
            col.add("iota_not_in_kernel", one)
        return col.report({"base_elements": len(G.sample(bound)), "extension_elements": len(E.sample(bound))})


def sce_from_cocycle(f: Cocycle2, check_bound: int = 2) -> SectionedCentralExtension:
    G = f.group
    e = G.identity
    E = CentralExtension(G, f.f, name=f"E_{f.name}", check_bound=check_bound)

    def log(x):
        if x.a != e:
            raise RepresentationError(f"{x!r} is not in the image of Z")
        return x.n

    return SectionedCentralExtension(E, G, E.central, Homomorphism(E, G, lambda x: x.a, name="pi"),
                                     E.section, log)


def sce_from_leftorder(lo: LeftOrderingWithZ, base: Group | None = None, project: Callable | None = None,
                       preimage: Callable | None = None) -> SectionedCentralExtension:
    """Extension ``<z> -> G -> G/<z>`` with the minimal-representative section.

    By default the base is :class:`QuotientGroup`.  Passing ``base`` with
    ``project`` (``G -> base``) and ``preimage`` (any lift) identifies the
    quotient with another group, e.g. the lift of ``(G, c)`` with G itself.
    """
    E = lo.group
    if base is None:
        base = QuotientGroup(lo)
        project = lo.minrep
        preimage = lambda g: g

    def log(x):
        k = lo.floor(x)
        if lo.zpow(k) != x:
            raise RepresentationError(f"{x!r} is not a power of z")
        return k

    return SectionedCentralExtension(E, base, lo.zpow, Homomorphism(E, base, project, name="pi"),
                                     lambda g: lo.minrep(preimage(g)), log)


def associated_cocycle(sce: SectionedCentralExtension) -> Cocycle2:
    """``f_s(g, h)`` with ``iota(f_s(g, h)) = s(g) s(h) s(gh)^-1``."""
    E, G, s = sce.E, sce.G, sce.s

    def f(g, h):
        return sce.iota_log(E.mul(E.mul(s(g), s(h)), E.inv(s(G.mul(g, h)))))

    return Cocycle2(G, f, "f_s")


def sce_equivalent(e1: SectionedCentralExtension, e2: SectionedCentralExtension,
                   bound: int = DEFAULT_BOUND) -> ValidationReport:
    """Equivalence of sectioned extensions, decided by comparing associated cocycles on a window."""
    if e1.G.key != e2.G.key:
        raise PreconditionError("extensions have different base groups", (e1.G.name, e2.G.name))
    els = e1.G.sample(bound)
    f1, f2 = associated_cocycle(e1), associated_cocycle(e2)
    col = Collector(1)
    bad = f1.disagreement(f2, els)
    if bad is not None:
        col.add("cocycles_differ", bad, values=[f1(*bad), f2(*bad)])
    return col.report({"pairs": len(els) ** 2})


# coboundaries

def coboundary_witness(f: Cocycle2, guard: int = 12) -> dict | None:
    """Solve ``d(a) + d(b) - d(ab) = f(a, b)``, ``d(id) = 0`` over Z on a finite group.

    The system is solved exactly over Q.  On a finite group the homogeneous
    system only has the zero solution (a homomorphism to Z is trivial), so the
    rational solution is unique and f is a coboundary iff it is integral.
    Any returned witness has been re-checked by substitution.
    """
    G = f.group
    els = G.elements()
    if len(els) > guard:
        raise SizeGuardError(f"|G| = {len(els)} exceeds the coboundary guard {guard}")
    e = G.identity
    unknowns = [g for g in els if g != e]
    index = {g: i for i, g in enumerate(unknowns)}
    rows, rhs = [], []
    for a in els:
        for b in els:
            row = [0] * len(unknowns)
            for g, sgn in ((a, 1), (b, 1), (G.mul(a, b), -1)):
                if g != e:
                    row[index[g]] += sgn
            rows.append(row)
            rhs.append(f(a, b))
    if not unknowns:
        return {e: 0} if all(v == 0 for v in rhs) else None
    A, y = sympy.Matrix(rows), sympy.Matrix(rhs)
    try:
        sol, params = A.gauss_jordan_solve(y)
    except ValueError:
        return None
    if params.shape[0]:
        raise IndeterminateError("coboundary system has a nontrivial kernel")
    if not all(v.is_integer for v in sol):
        return None
    d = {e: 0, **{g: int(sol[i]) for g, i in index.items()}}
    for a in els:
        for b in els:
            if d[a] + d[b] - d[G.mul(a, b)] != f(a, b):
                raise RepresentationError(f"solver returned a witness failing at {(a, b)!r}")
    return d


def coboundary(d: Callable[[Any], int], group: Group) -> Cocycle2:
    """``delta d(a, b) = d(a) + d(b) - d(ab)``."""
    return Cocycle2(group, lambda a, b: d(a) + d(b) - d(group.mul(a, b)), "delta d")


def conjugation_coboundary(co: CircularOrdering, w) -> Callable[[Any], int]:
    """``d_w(a)``, the integer coordinate of ``(0, w)^-1 (0, a) (0, w)`` in the lift.

    It satisfies ``f_c - f_{c^w} = delta d_w``.
    """
    E = lift_group(co, check_bound=1).group
    sw = Ext(0, w)
    swi = E.inv(sw)
    return lambda a: E.mul(swi, E.mul(Ext(0, a), sw)).n


# conjugation and the quotient

def conjugate_quotient_check(lo: LeftOrderingWithZ, g, elements: Sequence) -> ValidationReport:
    """Compare the quotient of ``<^g`` with ``c_<`` conjugated by ``g<z>`` on all triples."""
    left = quotient_group(conjugate_left(lo, g))
    right = conjugate_circular(quotient_group(lo), lo.minrep(g))
    col = Collector()
    for t in itertools.product(elements, repeat=3):
        if left(*t) != right(*t):
            col.add("mismatch", t)
    return col.report({"elements": len(elements), "triples": len(elements) ** 3})


def conjugate_family(co: CircularOrdering, words: Sequence, bound: int = DEFAULT_BOUND,
                     elements: Sequence | None = None) -> list[CircularOrdering]:
    """The distinct orderings ``c^w`` for w in ``words``, compared on a window."""
    els = tuple(elements) if elements is not None else co.group.sample(bound)
    family: list[CircularOrdering] = []
    for w in words:
        cw = conjugate_circular(co, w)
        if all(compare_circular(cw, other, els) is not None for other in family):
            family.append(cw)
    return family


# the cones P_{alpha, phi}

def cone_alpha_phi(co: CircularOrdering, alpha: CircularOrdering, d_alpha: Callable[[Any], int],
                   varphi: Callable[[Any], int], bound: int = DEFAULT_BOUND,
                   elements: Sequence | None = None) -> LeftOrderingWithZ:
    """Left ordering of the lift of ``(G, c)`` with ``P u {id} = {(n, a) : n + d_alpha(a) + varphi(a) >= 0}``.

    ``d_alpha`` must satisfy ``f_c - f_alpha = delta d_alpha``; this is checked
    on all pairs of the window.
    """
    G = co.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    fc, fa = cocycle_from_circular(co), cocycle_from_circular(alpha)
    diff, delta = fc - fa, coboundary(d_alpha, G)
    bad = diff.disagreement(delta, els)
    if bad is not None:
        raise PreconditionError("d_alpha does not split f_c - f_alpha", bad)
    E = lift_group(co).group
    e = G.identity
    level = lambda x: x.n + d_alpha(x.a) + varphi(x.a)
    return LeftOrderingWithZ(E, lambda x: level(x) >= 0 and x != (0, e), f"P_{alpha.name}",
                             z=Ext(1, e), z_floor=level)


def phi_g_alpha_beta(g, co: CircularOrdering, alpha: CircularOrdering, beta: CircularOrdering,
                     d_alpha: Callable, d_beta: Callable, bound: int = DEFAULT_BOUND,
                     elements: Sequence | None = None) -> tuple[Callable[[Any], int], ValidationReport]:
    """The map ``a -> -1 + f_c(g, a) + f_c(ga, g^-1) + d_beta(g a g^-1) - d_alpha(a)``.

    Requires ``f_alpha(a, b) = f_beta(g a g^-1, g b g^-1)``.  Returns the map
    and a report of its homomorphism check on the window.
    """
    G = co.group
    if g == G.identity:
        raise PreconditionError("g must not be the identity", g)
    els = tuple(elements) if elements is not None else G.sample(bound)
    fc, fa, fb = (cocycle_from_circular(o) for o in (co, alpha, beta))
    gi = G.inv(g)
    conj = lambda a: G.mul(g, G.mul(a, gi))
    for a in els:
        for b in els:
            if fa(a, b) != fb(conj(a), conj(b)):
                raise PreconditionError("alpha and beta are not paired by conjugation with g", (a, b))

    def phi(a):
        return -1 + fc(g, a) + fc(G.mul(g, a), gi) + d_beta(conj(a)) - d_alpha(a)

    col = Collector()
    for a in els:
        for b in els:
            if phi(G.mul(a, b)) != phi(a) + phi(b):
                col.add("not_homomorphism", (a, b))
    return phi, col.report({"pairs": len(els) ** 2})


# convex subgroups

def convex_splitting_d(co: CircularOrdering, in_subgroup: Callable[[Any], bool],
                       subgroup_elements: Sequence, bound: int = DEFAULT_BOUND,
                       cone: ConvexCone | None = None) -> tuple[Callable[[Any], int], ValidationReport]:
    """``d(id) = 0``, ``d(h) = 0`` on the convex cone of H and 1 off it.

    Returns d and a report of ``f_c(g, h) = d(g) - d(gh) + d(h)`` on all pairs
    of ``subgroup_elements``.
    """
    G = co.group
    e = G.identity
    cone = cone or convex_positive_cone(co, in_subgroup, bound)
    for h in subgroup_elements:
        if cone.membership(h) is Verdict.UNKNOWN:
            raise IndeterminateError(f"cone membership of {h!r} is undecided on the window")

    def d(h):
        if h == e:
            return 0
        return 0 if cone(h) else 1

    fc = cocycle_from_circular(co)
    col = Collector()
    for g in subgroup_elements:
        for h in subgroup_elements:
            gh = G.mul(g, h)
            if in_subgroup(gh) and fc(g, h) != d(g) - d(gh) + d(h):
                col.add("splitting", (g, h))
    return d, col.report({"pairs": len(subgroup_elements) ** 2})


def convex_embed_in_lift(co: CircularOrdering, d: Callable[[Any], int], subgroup: Subgroup,
                         bound: int = DEFAULT_BOUND) -> tuple[Homomorphism, ValidationReport]:
    """``h -> (-d(h), h)`` into the lift, with a windowed check that it is a homomorphism
    onto a convex subgroup of the lifted left ordering."""
    lo = lift_group(co)
    E = lo.group
    hom = Homomorphism(subgroup, E, lambda h: Ext(-d(h), h), injective=True, name="iota_H")
    reports = {"homomorphism": hom.check(bound)}
    image = [hom(h) for h in subgroup.window(bound)]
    in_image = lambda x: subgroup.member(x.a) and x.n == -d(x.a)
    col = Collector()
    ambient = E.window(bound)
    for lo_end in image:
        for hi_end in image:
            if not lo.less(lo_end, hi_end):
                continue
            for x in ambient:
                if lo.less(lo_end, x) and lo.less(x, hi_end) and not in_image(x):
                    col.add("not_convex", (lo_end, x, hi_end))
    reports["convexity"] = col.report({"image": len(image), "ambient": len(ambient)})
    return hom, merge_reports(reports)


# round trips between the two constructions

def roundtrip_eta(co: CircularOrdering, bound: int = DEFAULT_BOUND,
                  elements: Sequence | None = None) -> ValidationReport:
    """Quotient of the lift, read through ``(n, a)<z> -> a``, against c; and ``f_< = f_c``."""
    G = co.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    lo = lift_group(co)
    qc = quotient_group(lo)
    fl, fc = cocycle_from_leftorder(lo), cocycle_from_circular(co)
    col = Collector()
    for a, b, d in itertools.product(els, repeat=3):
        if qc(Ext(0, a), Ext(0, b), Ext(0, d)) != co(a, b, d):
            col.add("eta", (a, b, d))
    cocycles = Collector()
    for a in els:
        for b in els:
            if fl(Ext(0, a), Ext(0, b)) != fc(a, b):
                cocycles.add("cocycle", (a, b))
    return merge_reports({
        "eta": col.report({"triples": len(els) ** 3}),
        "cocycle": cocycles.report({"pairs": len(els) ** 2}),
    })


def nu_map(lo: LeftOrderingWithZ) -> tuple[LeftOrderingWithZ, Homomorphism, Callable]:
    """The lift of the quotient of ``lo`` and the map ``(n, abar) -> z^n abar`` with its inverse."""
    lifted = lift_group(quotient_group(lo))
    G = lo.group
    nu = Homomorphism(lifted.group, G, lambda x: G.mul(lo.zpow(x.n), x.a), injective=True, name="nu")
    nu_inv = lambda g: Ext(lo.floor(g), lo.minrep(g))
    return lifted, nu, nu_inv


def roundtrip_nu(lo: LeftOrderingWithZ, bound: int = DEFAULT_BOUND, levels: int = 3,
                 elements: Sequence | None = None) -> ValidationReport:
    """Check that nu is an order- and z-preserving isomorphism on a window.

    The window of the lift is ``(n, abar)`` with ``|n| <= levels`` and abar a
    minimal representative of an element of ``elements``.
    """
    G = lo.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    lifted, nu, nu_inv = nu_map(lo)
    reps = []
    for g in els:
        r = lo.minrep(g)
        if r not in reps:
            reps.append(r)
    window = [Ext(n, r) for n in range(-levels, levels + 1) for r in reps]
    col = Collector()
    if nu(lifted.z) != lo.z:
        col.add("z", lifted.z)
    for x in window:
        gx = nu(x)
        if nu_inv(gx) != x:
            col.add("bijection", x)
        if lifted.positive(x) != lo.positive(gx):
            col.add("order", x)
        for y in window:
            if nu(lifted.group.mul(x, y)) != G.mul(gx, nu(y)):
                col.add("homomorphism", (x, y))
    for g in els:
        if nu(nu_inv(g)) != g:
            col.add("bijection", g)
    return col.report({"lift_window": len(window), "pairs": len(window) ** 2, "elements": len(els)})


def check_lift_is_cocycle_pullback(phi: Homomorphism, target: CircularOrdering,
                                   bound: int = DEFAULT_BOUND) -> ValidationReport:
    """``f_{phi^* c} = phi^* f_c`` on a window (phi injective and order-preserving)."""
    require_injective(phi, bound)
    left = cocycle_from_circular(pullback_circular(phi, target, bound))
    right = cocycle_from_circular(target).pullback(phi)
    els = phi.source.sample(bound)
    col = Collector(1)
    bad = left.disagreement(right, els)
    if bad is not None:
        col.add("mismatch", bad)
    return col.report({"pairs": len(els) ** 2})


def conjugation_normality_check(co: CircularOrdering, w, g, varphi: Callable[[Any], int] = lambda a: 0,
                                bound: int = DEFAULT_BOUND, elements: Sequence | None = None,
                                lift_levels: int = 2) -> ValidationReport:
    """Conjugating ``P_{alpha, varphi}`` by ``(0, g)`` gives ``P_{beta, psi}``.

    Here ``alpha = c^w``, ``beta = c^(g w)``, the splitting functions are the
    conjugation coboundaries and ``psi = varphi - phi_{g, alpha, beta}``.  The
    check runs over ``(n, a)`` with ``|n| <= lift_levels`` and a in the window.
    """
    G = co.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    gw = G.mul(g, w)
    alpha, beta = conjugate_circular(co, w), conjugate_circular(co, gw)
    d_alpha, d_beta = conjugation_coboundary(co, w), conjugation_coboundary(co, gw)
    phi_g, hom_report = phi_g_alpha_beta(g, co, alpha, beta, d_alpha, d_beta, elements=els)
    psi = lambda a: varphi(a) - phi_g(a)
    p_alpha = cone_alpha_phi(co, alpha, d_alpha, varphi, elements=els)
    p_beta = cone_alpha_phi(co, beta, d_beta, psi, elements=els)
    E = p_alpha.group
    sg = Ext(0, g)
    sgi = E.inv(sg)
    col = Collector()
    window = [Ext(n, a) for n in range(-lift_levels, lift_levels + 1) for a in els]
    for x in window:
        if p_alpha.positive(x) != p_beta.positive(E.mul(sg, E.mul(x, sgi))):
            col.add("membership", x)
    return merge_reports({"phi_homomorphism": hom_report, "normality": col.report({"lift_window": len(window)})})
