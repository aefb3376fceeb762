"""Circular and left orderings of groups, and finite checks of their axioms."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .errors import CofinalityError, IndeterminateError, PreconditionError, SizeGuardError
from .groups import CyclicGroup, CircleRationals, Group, Homomorphism, Integers, Rationals, SemidirectZ, require_injective
from .report import Collector, ValidationReport, Verdict, merge_reports

DEFAULT_BOUND = 3


def sign_by(less: Callable[[Any, Any], bool], a, b, c) -> int:
    """Sign of the permutation sorting three distinct items under ``less``."""
    inversions = less(b, a) + less(c, a) + less(c, b)
    return -1 if inversions & 1 else 1


def sign_of_values(p, q, r) -> int:
    """Cyclic orientation of three comparable values; 0 when two coincide."""
    if p == q or q == r or p == r:
        return 0
    inversions = (q < p) + (r < p) + (r < q)
    return -1 if inversions & 1 else 1


@dataclass(eq=False)
class CircularOrdering:
    group: Group
    c: Callable[[Any, Any, Any], int]
    name: str = "c"

    def __call__(self, a, b, d) -> int:
        return self.c(a, b, d)

    def memoized(self) -> "CircularOrdering":
        table: dict = {}
        c = self.c

        def cached(a, b, d):
            key = (a, b, d)
            v = table.get(key)
            if v is None:
                v = table[key] = c(a, b, d)
            return v

        return CircularOrdering(self.group, cached, self.name)

    def reversed(self) -> "CircularOrdering":
        return CircularOrdering(self.group, lambda a, b, d: -self.c(a, b, d), f"-{self.name}")


@dataclass(eq=False)
class LeftOrdering:
    """A left ordering given by its positive cone."""

    group: Group
    positive: Callable[[Any], bool]
    name: str = "<"

    def less(self, a, b) -> bool:
        G = self.group
        return self.positive(G.mul(G.inv(a), b))

    def sign(self, g) -> int:
        if g == self.group.identity:
            return 0
        return 1 if self.positive(g) else -1


@dataclass(eq=False)
class LeftOrderingWithZ(LeftOrdering):
    """A left ordering with a distinguished positive, cofinal, central element ``z``.

    ``z_floor(g)`` returns the unique k with ``z^k <= g < z^(k+1)``; when it is
    not supplied the floor is found by exponential search over comparisons,
    bounded by ``floor_bound``.
    """

    z: Any = field(default=None, kw_only=True)
    z_floor: Callable[[Any], int] | None = field(default=None, kw_only=True)
    floor_bound: int = field(default=1 << 20, kw_only=True)

    def zpow(self, k: int):
        return self.group.pow(self.z, k)

    def _z_le(self, k: int, g) -> bool:
        # z^k <= g
        G = self.group
        return not self.positive(G.mul(G.inv(g), self.zpow(k)))

    def floor(self, g) -> int:
        if self.z_floor is not None:
            return self.z_floor(g)
        return self.search_floor(g)

    def search_floor(self, g) -> int:
        if self._z_le(0, g):
            lo, step = 0, 1
            while self._z_le(step, g):
                lo, step = step, step * 2
                if step > self.floor_bound:
                    raise CofinalityError(f"{g!r} exceeds z^{self.floor_bound}")
            hi = step
        else:
            hi, step = 0, 1
            while not self._z_le(-step, g):
                hi, step = -step, step * 2
                if step > self.floor_bound:
                    raise CofinalityError(f"{g!r} is below z^-{self.floor_bound}")
            lo = -step
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._z_le(mid, g):
                lo = mid
            else:
                hi = mid
        return lo

    def minrep(self, g):
        """The element of ``g<z>`` in ``[id, z)``."""
        k = self.floor(g)
        return g if k == 0 else self.group.mul(g, self.zpow(-k))


# standard orderings

def linear_circular(group: Group) -> CircularOrdering:
    """Circular ordering of a subgroup of Q induced by the usual order."""
    return CircularOrdering(group, sign_of_values, "lin")


def linear_to_circular(lo: LeftOrdering) -> CircularOrdering:
    """Circular ordering read off a left ordering: +1 exactly on cyclic rotations of increasing triples."""

    def c(a, b, d):
        if a == b or b == d or a == d:
            return 0
        return sign_by(lo.less, a, b, d)

    return CircularOrdering(lo.group, c, f"circ({lo.name})")


def circle_standard(group: Group) -> CircularOrdering:
    """Counterclockwise orientation of points of Q/Z, or of Z/n placed at r/n."""
    if not isinstance(group, (CyclicGroup, CircleRationals)):
        raise TypeError(f"{group.name} has no standard embedding in the circle")
    return CircularOrdering(group, sign_of_values, "std")


def table_circular(group: Group, arrangement: Sequence, name: str = "table") -> CircularOrdering:
    """Ordering that reads elements counterclockwise in the listed cyclic arrangement."""
    pos = {g: i for i, g in enumerate(arrangement)}
    if len(pos) != len(arrangement):
        raise ValueError("arrangement repeats an element")

    def c(a, b, d):
        return sign_of_values(pos[a], pos[b], pos[d])

    ordering = CircularOrdering(group, c, name)
    ordering.arrangement = tuple(arrangement)
    return ordering


def step_ordering(n: int, step: int) -> CircularOrdering:
    """Ordering of Z/n with arrangement 0, step, 2*step, ... (step a unit)."""
    G = CyclicGroup(n)
    return table_circular(G, [k * step % n for k in range(n)], f"step{step}")


def lex_circular(group: Group, project: Callable, quotient_ordering: CircularOrdering,
                 kernel_positive: Callable[[Any], bool], name: str = "lex") -> CircularOrdering:
    """Lexicographic circular ordering from ``1 -> K -> G -> Q -> 1``.

    Cosets of K are placed around the circle by ``quotient_ordering`` and each
    coset is a linearly ordered arc, ``u < v`` iff ``u^-1 v`` is in the cone of K.
    """
    G = group

    def less(u, v):
        return kernel_positive(G.mul(G.inv(u), v))

    def c(a, b, d):
        if a == b or b == d or a == d:
            return 0
        q = (project(a), project(b), project(d))
        if q[0] != q[1] and q[1] != q[2] and q[0] != q[2]:
            return quotient_ordering(*q)
        if q[0] == q[1] == q[2]:
            return sign_by(less, a, b, d)
        t = (a, b, d)
        k = 0 if q[1] == q[2] else (1 if q[0] == q[2] else 2)
        return 1 if less(t[(k + 1) % 3], t[(k + 2) % 3]) else -1

    return CircularOrdering(group, c, name)


def semidirect_lex_circular(group: SemidirectZ, direction: int = 1) -> CircularOrdering:
    """The ordering of Z x| Z/2 built from the Z/2 quotient and the order of Z (t > id when direction=1)."""
    if group.modulus != 2:
        raise TypeError("expected Z x| Z/2")
    Z2 = CyclicGroup(2)
    zero = CircularOrdering(Z2, lambda a, b, d: 0, "zero")
    return lex_circular(group, lambda g: g[1], zero, lambda g: g[0] * direction > 0,
                        "c2" if direction == 1 else "c2'")


def pullback_circular(phi: Homomorphism, co: CircularOrdering, bound: int = DEFAULT_BOUND) -> CircularOrdering:
    """``phi^* c``; phi must be injective."""
    require_injective(phi, bound)
    f = phi.apply
    return CircularOrdering(phi.source, lambda a, b, d: co.c(f(a), f(b), f(d)), f"{phi.name}^*{co.name}")


def conjugate_circular(co: CircularOrdering, h) -> CircularOrdering:
    """``c^h(g1, g2, g3) = c(g1 h, g2 h, g3 h)``."""
    G = co.group
    return CircularOrdering(G, lambda a, b, d: co.c(G.mul(a, h), G.mul(b, h), G.mul(d, h)),
                            f"{co.name}^{h!r}")


def compare_circular(c1: CircularOrdering, c2: CircularOrdering, elements: Iterable) -> tuple | None:
    """First triple (in window order) where two orderings disagree, else None."""
    elements = tuple(elements)
    for t in itertools.product(elements, repeat=3):
        if c1(*t) != c2(*t):
            return t
    return None


# left orderings

def standard_left(group: Group, z=None) -> LeftOrderingWithZ:
    """Usual order on Z or Q with z > 0 as the cofinal element."""
    if not isinstance(group, (Integers, Rationals)):
        raise TypeError("standard left ordering needs Z or Q")
    if z is None:
        z = group.identity + 1
    if not z > 0:
        raise PreconditionError("z must be positive", z)
    if isinstance(group, Integers):
        floor = lambda g: g // z
    else:
        floor = lambda g: (g / z).__floor__()
    return LeftOrderingWithZ(group, lambda g: g > 0, "std", z=z, z_floor=floor)


def lexicographic_left(group: Group, z, *, kernel_positive=lambda k: k > 0,
                       quotient_positive=lambda q: q > 0, quotient_zero=lambda q: q == 0,
                       z_floor=None, check_bound: int | None = 4, name: str = "lex") -> LeftOrderingWithZ:
    """Lexicographic ordering on pairs ``(kernel, quotient)``: the quotient coordinate decides first.

    Works for Z x Z and for the Klein-bottle group in its ``y^m x^n`` normal
    form.  When ``check_bound`` is set the declared ``z`` is checked to be
    positive and cofinal on that window.
    """

    def positive(g):
        k, q = g
        if quotient_zero(q):
            return kernel_positive(k)
        return quotient_positive(q)

    lo = LeftOrderingWithZ(group, positive, name, z=z, z_floor=z_floor)
    if check_bound is not None:
        if not positive(z):
            raise PreconditionError("z is not positive", z)
        for g in group.sample(check_bound):
            if not _bounded_by_z_powers(lo, g, 1 << 12):
                raise PreconditionError("declared z is not cofinal", g)
    return lo


def klein_lex_left(group: SemidirectZ | None = None, z_power: int = 2) -> LeftOrderingWithZ:
    """Klein-bottle group ordered by x-exponent, then y-exponent, with ``z = x^z_power`` (even)."""
    if z_power <= 0 or z_power % 2:
        raise PreconditionError("z must be a positive even power of x to be central", z_power)
    K = group or SemidirectZ(0)

    def floor(g):
        m, n = g
        k, r = divmod(n, z_power)
        return k if (r > 0 or m >= 0) else k - 1

    return lexicographic_left(K, (0, z_power), z_floor=floor, name="klein")


def pullback_left(phi: Homomorphism, lo: LeftOrderingWithZ, z=None, bound: int = DEFAULT_BOUND) -> LeftOrderingWithZ:
    """``phi^* <`` with ``phi(z) = lo.z``; the floor is transported through phi."""
    require_injective(phi, bound)
    if z is not None and phi(z) != lo.z:
        raise PreconditionError("phi does not send z to z", z)
    return LeftOrderingWithZ(phi.source, lambda g: lo.positive(phi(g)), f"{phi.name}^*{lo.name}",
                             z=z, z_floor=(lambda g: lo.floor(phi(g))) if z is not None else None)


def conjugate_left(lo: LeftOrderingWithZ, g) -> LeftOrderingWithZ:
    """``<^g`` with cone ``g^-1 P g``; z is unchanged since it is central."""
    G = lo.group
    gi = G.inv(g)
    conj = lambda x: G.mul(gi, G.mul(x, g))
    return LeftOrderingWithZ(G, lambda x: lo.positive(conj(x)), f"{lo.name}^{g!r}", z=lo.z,
                             z_floor=lambda x: lo.floor(conj(x)))


# validation

def validate_circular(co: CircularOrdering, bound: int = DEFAULT_BOUND, elements: Sequence | None = None,
                      multipliers: Sequence | None = None, sample: int | None = None,
                      seed: int | None = None, limit: int = 10) -> ValidationReport:
    """Check the three axioms of a circular ordering on a finite region.

    Degeneracy is checked on all triples, the cocycle identity on all
    quadruples and left invariance on all (multiplier, triple) pairs drawn from
    ``elements`` (default: the group's enumeration or window).  With
    ``sample`` set, that many random quadruples / pairs are drawn instead,
    using ``seed``.
    """
    G = co.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    mults = tuple(multipliers) if multipliers is not None else els
    n = len(els)
    col = Collector(limit)
    table = [[[co(a, b, d) for d in els] for b in els] for a in els]
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            row = table[i][j]
            for k, d in enumerate(els):
                degenerate = a == b or b == d or a == d
                v = row[k]
                if v not in (-1, 0, 1) or (v == 0) != degenerate:
                    col.add("degeneracy", (a, b, d), value=v)
    region = {"elements": n, "triples": n ** 3}
    if sample is None:
        quads = itertools.product(range(n), repeat=4)
        region["quadruples"] = n ** 4
    else:
        rng = random.Random(seed)
        quads = [tuple(rng.randrange(n) for _ in range(4)) for _ in range(sample)]
        region["quadruples"] = sample
        region["seed"] = seed
    for i, j, k, m in quads:
        if table[j][k][m] - table[i][k][m] + table[i][j][m] - table[i][j][k]:
            col.add("cocycle", (els[i], els[j], els[k], els[m]))
    if sample is None:
        pairs = ((g, t) for g in mults for t in itertools.product(range(n), repeat=3))
        region["invariance_pairs"] = len(mults) * n ** 3
    else:
        rng = random.Random(None if seed is None else seed + 1)
        pairs = [(mults[rng.randrange(len(mults))], tuple(rng.randrange(n) for _ in range(3)))
                 for _ in range(sample)]
        region["invariance_pairs"] = sample
    shifted: dict = {}
    for g, (i, j, k) in pairs:
        row = shifted.get(g)
        if row is None:
            row = shifted[g] = [G.mul(g, x) for x in els]
        if co(row[i], row[j], row[k]) != table[i][j][k]:
            col.add("invariance", (g, (els[i], els[j], els[k])))
    return col.report(region)


def _bounded_by_z_powers(lo: LeftOrderingWithZ, g, power_bound: int) -> bool:
    """Whether ``z^-k < g < z^k`` for some k <= power_bound (doubling search)."""
    G = lo.group
    k = 1
    while k <= power_bound:
        zk = lo.zpow(k)
        if lo.less(g, zk) and lo.less(G.inv(zk), g):
            return True
        k *= 2
    return False


def validate_cone(group: Group, positive: Callable[[Any], bool], elements: Sequence,
                  limit: int = 10) -> ValidationReport:
    """``P P subset P`` and ``P, P^-1, {id}`` partition the checked elements."""
    col = Collector(limit)
    e = group.identity
    pos = {}
    for g in elements:
        p, pinv = bool(positive(g)), bool(positive(group.inv(g)))
        pos[g] = p
        if g == e:
            if p:
                col.add("identity_positive", g)
        elif p == pinv:
            col.add("trichotomy", g)
    cone = [g for g in elements if pos[g]]
    for a in cone:
        for b in cone:
            if not positive(group.mul(a, b)):
                col.add("closure", (a, b))
    return col.report({"elements": len(elements), "positive_pairs": len(cone) ** 2})


def validate_left(lo: LeftOrderingWithZ, bound: int = DEFAULT_BOUND, elements: Sequence | None = None,
                  power_bound: int = 1 << 12, limit: int = 10) -> ValidationReport:
    """Cone axioms plus positivity, centrality and cofinality of z, and the floor identity."""
    G = lo.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    reports = {"cone": validate_cone(G, lo.positive, els, limit)}
    col = Collector(limit)
    if not lo.positive(lo.z):
        col.add("z_not_positive", lo.z)
    for g in els:
        if not G.commutes(g, lo.z):
            col.add("z_not_central", g)
    reports["z"] = col.report({"elements": len(els)})
    col = Collector(limit)
    for g in els:
        if not _bounded_by_z_powers(lo, g, power_bound):
            col.add("not_cofinal", g)
            continue
        if lo.z_floor is not None:
            k = lo.z_floor(g)
            if not (lo._z_le(k, g) and not lo._z_le(k + 1, g)):
                col.add("floor", g, floor=k)
    reports["cofinality"] = col.report({"elements": len(els), "power_bound": power_bound})
    return merge_reports(reports)


def is_cofinal(g, lo: LeftOrderingWithZ, bound: int = 64) -> Verdict:
    """Whether some power of g exceeds z.

    YES is certain.  NO means every power g^k, |k| <= bound, stayed in
    ``[z^-1, z)``; UNKNOWN means neither was established.
    """
    G = lo.group
    k = 1
    while k <= bound:
        gk = G.pow(g, k)
        if lo.less(lo.z, gk) or lo.less(lo.z, G.inv(gk)):
            return Verdict.YES
        k *= 2
    try:
        trapped = all(lo.floor(G.pow(g, s * k)) in (-1, 0) for k in range(1, bound + 1) for s in (1, -1))
    except CofinalityError:
        return Verdict.UNKNOWN
    return Verdict.NO if trapped else Verdict.UNKNOWN


# convexity

def is_convex_circular(co: CircularOrdering, in_subgroup: Callable[[Any], bool], bound: int = DEFAULT_BOUND,
                       subgroup_elements: Sequence | None = None, elements: Sequence | None = None,
                       limit: int = 10) -> ValidationReport:
    """Check: ``c(h1, g, h2) = 1`` and ``c(h2, f, h1) = 1`` with g outside H force f into H."""
    els = tuple(elements) if elements is not None else co.group.sample(bound)
    H = tuple(subgroup_elements) if subgroup_elements is not None else tuple(g for g in els if in_subgroup(g))
    outside = [g for g in els if not in_subgroup(g)]
    region = {"subgroup_elements": len(H), "elements": len(els)}
    if not outside:
        return ValidationReport("inapplicable", region, [{"kind": "not_proper", "witness": None}])
    col = Collector(limit)
    for h1 in H:
        for h2 in H:
            if h1 == h2:
                continue
            if not any(co(h1, g, h2) == 1 for g in outside):
                continue
            g = next(g for g in outside if co(h1, g, h2) == 1)
            for f in outside:
                if co(h2, f, h1) == 1:
                    col.add("not_convex", (h1, g, h2, f))
    return col.report(region)


@dataclass(eq=False)
class ConvexCone:
    """Positive cone ``{h in H : c(id, h, g) = 1 for some g outside H}`` of a convex subgroup.

    Membership is searched over a fixed window of elements outside H; results
    and witnesses are memoized.
    """

    ordering: CircularOrdering
    in_subgroup: Callable[[Any], bool]
    search: tuple
    witnesses: dict = field(default_factory=dict)

    def membership(self, h) -> Verdict:
        if h in self.witnesses:
            return self.witnesses[h][0]
        G = self.ordering.group
        e = G.identity
        verdict, witness = Verdict.UNKNOWN, None
        if h == e:
            verdict = Verdict.NO
        else:
            for g in self.search:
                v = self.ordering(e, h, g)
                if v == 1:
                    verdict, witness = Verdict.YES, g
                    break
                if v == -1 and witness is None:
                    witness = g
            else:
                # c(id, g, h) = 1 for g outside H puts h^-1 in the cone, so h is not in it
                if witness is not None:
                    verdict = Verdict.NO
        self.witnesses[h] = (verdict, witness)
        return verdict

    def __call__(self, h) -> bool:
        v = self.membership(h)
        if v is Verdict.UNKNOWN:
            raise IndeterminateError(f"no witness decides whether {h!r} is positive")
        return v is Verdict.YES

    def as_left_ordering(self, name: str = "P_H") -> LeftOrdering:
        return LeftOrdering(self.ordering.group, self, name)


def convex_positive_cone(co: CircularOrdering, in_subgroup: Callable[[Any], bool],
                         bound: int = DEFAULT_BOUND, search: Sequence | None = None) -> ConvexCone:
    els = tuple(search) if search is not None else co.group.sample(bound)
    return ConvexCone(co, in_subgroup, tuple(g for g in els if not in_subgroup(g)))


def coset_circular(co: CircularOrdering, in_subgroup: Callable[[Any], bool], bound: int = DEFAULT_BOUND,
                   elements: Sequence | None = None) -> CircularOrdering:
    """Ordering of G/H evaluated on representatives, ``c(g1 H, g2 H, g3 H) = c(g1, g2, g3)``.

    Requires at least three cosets on the window; the value is checked to be
    independent of the representatives chosen from the window.
    """
    G = co.group
    els = tuple(elements) if elements is not None else G.sample(bound)
    same = lambda a, b: bool(in_subgroup(G.mul(G.inv(a), b)))
    cosets: list[list] = []
    for g in els:
        for cl in cosets:
            if same(cl[0], g):
                cl.append(g)
                break
        else:
            cosets.append([g])
    if len(cosets) < 3:
        raise PreconditionError(f"index {len(cosets)} < 3 on the window", len(cosets))
    for i, j, k in itertools.combinations(range(len(cosets)), 3):
        ref = co(cosets[i][0], cosets[j][0], cosets[k][0])
        for t in itertools.product(cosets[i], cosets[j], cosets[k]):
            if co(*t) != ref:
                raise PreconditionError("coset ordering is not well defined (H not convex)", t)

    def c(a, b, d):
        if same(a, b) or same(b, d) or same(a, d):
            return 0
        return co(a, b, d)

    return CircularOrdering(G, c, f"{co.name}/H")


def enumerate_circular_orderings(group: Group, guard: int = 9) -> list[CircularOrdering]:
    """All circular orderings of a small finite group, by brute force over cyclic arrangements.

    An arrangement starting at the identity gives a left-invariant ordering
    exactly when its successor map commutes with every left translation.
    """
    els = group.elements()
    n = len(els)
    if n > guard:
        raise SizeGuardError(f"|G| = {n} exceeds the enumeration guard {guard}")
    e = group.identity
    if n <= 2:
        return [CircularOrdering(group, lambda a, b, d: 0, "zero")]
    others = [g for g in els if g != e]
    found = []
    for perm in itertools.permutations(others):
        arr = (e,) + perm
        succ = {arr[i]: arr[(i + 1) % n] for i in range(n)}
        if all(succ[group.mul(g, x)] == group.mul(g, succ[x]) for g in others for x in els):
            found.append(table_circular(group, arr, f"arr{len(found)}"))
    return found
