"""Circular ordering of a free product of two circularly ordered groups.

A triple of words is simplified by three moves until each entry is a single
letter (syllable) or the identity:

1. strip a leftmost letter shared by all three words;
2. if exactly two words share their leftmost letter x, left-multiply the triple by x^-1;
3. replace a word of length > 1 whose leftmost letter begins no other word by that letter.

Moves 1 and 2 are left multiplications and move 3 does not change the relative
position of the word, so the value of the ordering is read off the final
triple by a small rule table.  Each move strictly lowers the total number of
syllables, which bounds the number of steps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import NonterminationError, RepresentationError
from .groups import FreeProduct, Homomorphism
from .orders import CircularOrdering
from .report import Collector, ValidationReport

DEFAULT_PRIORITY = (1, 2, 3)
PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)  # (move, letter, triple)

    def __len__(self):
        return len(self.steps)

    def to_dict(self):
        from .serialization import to_jsonable

        return [{"move": m, "letter": to_jsonable(x), "triple": to_jsonable(t)} for m, x, t in self.steps]


def reduction_step(triple: tuple, group: FreeProduct, priority: Sequence[int] = DEFAULT_PRIORITY,
                   move3_order: Sequence[int] = (0, 1, 2)) -> tuple | None:
    """One move ``(move, letter, new_triple)``, or None when the triple is minimal."""
    firsts = [w[0] if w else None for w in triple]
    for move in priority:
        if move == 1:
            x = firsts[0]
            if x is not None and x == firsts[1] == firsts[2]:
                return 1, x, tuple(w[1:] for w in triple)
        elif move == 2:
            for i, j in PAIRS:
                x = firsts[i]
                k = 3 - i - j
                if x is not None and x == firsts[j] and firsts[k] != x:
                    xinv = group.inv((x,))
                    new = [None] * 3
                    new[i], new[j] = triple[i][1:], triple[j][1:]
                    new[k] = group.mul(xinv, triple[k])
                    return 2, x, tuple(new)
        elif move == 3:
            for i in move3_order:
                w = triple[i]
                if len(w) > 1 and firsts.count(w[0]) == 1:
                    return 3, w[0], triple[:i] + ((w[0],),) + triple[i + 1:]
        else:
            raise ValueError(f"unknown move {move}")
    return None


def step_guard(triple: tuple) -> int:
    return 4 * sum(len(w) for w in triple) + 8


def minimal_reduction(triple: tuple, group: FreeProduct, priority: Sequence[int] = DEFAULT_PRIORITY,
                      move3_order: Sequence[int] = (0, 1, 2)) -> tuple[tuple, ReductionTrace]:
    trace = ReductionTrace()
    guard = step_guard(triple)
    t = tuple(triple)
    while True:
        step = reduction_step(t, group, priority, move3_order)
        if step is None:
            return t, trace
        t = step[2]
        trace.steps.append(step)
        if len(trace) > guard:
            raise NonterminationError(f"reduction of {triple!r} exceeded {guard} steps")


def base_circular(triple: tuple, orderings: Sequence[CircularOrdering]) -> int:
    """Value on a triple of single letters or identities from two circularly ordered factors.

    Letters of one factor use that factor's ordering.  A triple ``(g, h, id)``
    with g from the first factor and h from the second is positive.  Two
    letters from one factor and one from the other use the former's ordering
    with the outsider replaced by the identity: ``(g1, g2, h) -> c_G(g1, g2, id)``
    and ``(g, h1, h2) -> c_H(id, h1, h2)``.  Other placements follow by
    cyclic rotation.
    """
    a, b, d = triple
    if a == b or b == d or a == d:
        return 0
    for w in triple:
        if len(w) > 1:
            raise RepresentationError(f"{w!r} is not a single letter")
    fac = [w[0][0] if w else None for w in triple]
    present = {k for k in fac if k is not None}
    if not present <= {0, 1}:
        raise RepresentationError(f"letters {triple!r} are not from a binary free product")
    if len(present) == 1:
        k = present.pop()
        co = orderings[k]
        e = co.group.identity
        return co(*(w[0][1] if w else e for w in triple))
    if None in fac:
        r = fac.index(None)
        return 1 if fac[(r + 1) % 3] == 0 else -1
    odd = 0 if fac.count(0) == 1 else 1
    p = fac.index(odd)
    if odd == 1:
        co = orderings[0]
        return co(triple[(p + 1) % 3][0][1], triple[(p + 2) % 3][0][1], co.group.identity)
    co = orderings[1]
    return co(co.group.identity, triple[(p + 1) % 3][0][1], triple[(p + 2) % 3][0][1])


def _final_letters(triple: tuple, group: FreeProduct) -> tuple:
    """Minimal reduction under the default move priority, without building a trace.

    Moves 1 and 2 are applied until the leftmost letters are pairwise
    distinct; move 3 then just keeps the first letter of every word.
    """
    factors = group.factors
    a, b, d = triple
    guard = step_guard(triple)
    steps = 0

    def shift(x, w):
        # x^-1 w, where w does not start with x
        k, g = x
        gi = factors[k].inv(g)
        if w and w[0][0] == k:
            return ((k, factors[k].mul(gi, w[0][1])),) + w[1:]
        return ((k, gi),) + w

    while True:
        fa = a[0] if a else None
        fb = b[0] if b else None
        fd = d[0] if d else None
        if fa is not None and fa == fb:
            if fd == fa:
                a, b, d = a[1:], b[1:], d[1:]
            else:
                a, b, d = a[1:], b[1:], shift(fa, d)
        elif fa is not None and fa == fd:
            a, b, d = a[1:], shift(fa, b), d[1:]
        elif fb is not None and fb == fd:
            a, b, d = shift(fb, a), b[1:], d[1:]
        else:
            return a[:1], b[:1], d[:1]
        steps += 1
        if steps > guard:
            raise NonterminationError(f"reduction of {triple!r} exceeded {guard} steps")


def fp_circular(c0: CircularOrdering, c1: CircularOrdering) -> CircularOrdering:
    """The circular ordering of ``G0 * G1`` induced by c0 and c1."""
    group = FreeProduct([c0.group, c1.group])
    orderings = (c0, c1)

    def c(a, b, d):
        if a == b or b == d or a == d:
            return 0
        return base_circular(_final_letters((a, b, d), group), orderings)

    ordering = CircularOrdering(group, c, f"{c0.name}*{c1.name}")
    ordering.factors = orderings
    return ordering


def fp_evaluate(co: CircularOrdering, triple: tuple) -> tuple[int, tuple, ReductionTrace]:
    """Value, minimal reduction and trace of a triple under a binary free-product ordering."""
    final, trace = minimal_reduction(triple, co.group)
    return base_circular(final, co.factors), final, trace


# n-ary free products

def _leaves(shape) -> tuple:
    if isinstance(shape, int):
        return (shape,)
    return _leaves(shape[0]) + _leaves(shape[1])


def left_fold_shape(n: int):
    shape = 0
    for k in range(1, n):
        shape = (shape, k)
    return shape


def right_fold_shape(n: int):
    shape = n - 1
    for k in range(n - 2, -1, -1):
        shape = (k, shape)
    return shape


def _convert(word: tuple, shape):
    """Rewrite a flat syllable word as a word in the nested free product described by ``shape``."""
    if isinstance(shape, int):
        return word[0][1]
    left = set(_leaves(shape[0]))
    runs: list = []
    for syl in word:
        side = 0 if syl[0] in left else 1
        if runs and runs[-1][0] == side:
            runs[-1][1].append(syl)
        else:
            runs.append((side, [syl]))
    return tuple((side, _convert(tuple(run), shape[side])) for side, run in runs)


def fp_fold(orderings: Sequence[CircularOrdering], shape=None) -> CircularOrdering:
    """Ordering of the flat free product of several factors by iterated binary products.

    ``shape`` is a binary tree of factor indices, e.g. ``((0, 1), 2)``
    (default: left fold).  Flat words are rewritten into the nested product
    before evaluation.
    """
    n = len(orderings)
    if n < 2:
        raise ValueError("need at least two orderings")
    shape = left_fold_shape(n) if shape is None else shape
    if sorted(_leaves(shape)) != list(range(n)):
        raise ValueError(f"shape {shape!r} does not use each factor exactly once")

    def build(node):
        if isinstance(node, int):
            return orderings[node]
        return fp_circular(build(node[0]), build(node[1]))

    nested = build(shape)
    flat = FreeProduct([o.group for o in orderings])

    def c(a, b, d):
        return nested(_convert(a, shape), _convert(b, shape), _convert(d, shape))

    return CircularOrdering(flat, c, f"fold{shape!r}")


# morphisms

def free_product_hom(phis: Sequence[Homomorphism], source: FreeProduct | None = None,
                     target: FreeProduct | None = None) -> Homomorphism:
    """``phi_1 * phi_2 * ...`` acting letter by letter."""
    source = source or FreeProduct([p.source for p in phis])
    target = target or FreeProduct([p.target for p in phis])

    def apply(w):
        return target.normalize((k, phis[k](g)) for k, g in w)

    return Homomorphism(source, target, apply, injective=all(p.injective for p in phis),
                        name="*".join(p.name for p in phis))


@dataclass
class FauxResult:
    """``kind`` is ``order-preserving``, ``faux-only`` or ``neither``."""

    kind: str
    witness: tuple | None
    checked: int

    def to_dict(self):
        from .serialization import to_jsonable

        return {"kind": self.kind, "witness": to_jsonable(self.witness), "checked": self.checked}


def faux_check(phi: Homomorphism, c: CircularOrdering, d: CircularOrdering, bound: int = 3,
               elements: Sequence | None = None) -> FauxResult:
    """Classify phi by ``|c(t) - d(phi t)|`` over all triples of a window."""
    els = tuple(elements) if elements is not None else c.group.sample(bound)
    images = {g: phi(g) for g in els}
    kind, witness = "order-preserving", None
    for t in itertools.product(els, repeat=3):
        gap = abs(c(*t) - d(*(images[g] for g in t)))
        if gap > 1:
            return FauxResult("neither", t, len(els) ** 3)
        if gap and witness is None:
            kind, witness = "faux-only", t
    return FauxResult(kind, witness, len(els) ** 3)


def _recipe_witness(phis, cs, collapsed: int, bound: int):
    """Triple built as in the standard argument: g1 from the other factor, then g2, g3 from
    the collapsed factor with ``phi(g3) = id`` and ``phi(g2) != id``.

    For a collapsed second factor ``c(id, g2, g3) = -1`` and the triple is
    ``(g1, g2, g3)``; for a collapsed first factor the mirror image is used,
    ``c(id, g2, g3) = +1`` and the triple ``(g2, g3, g1)``.
    """
    other = 1 - collapsed
    Gc, Go = cs[collapsed].group, cs[other].group
    pc, po = phis[collapsed], phis[other]
    g1 = next((g for g in Go.sample(bound) if po(g) != po.target.identity), None)
    if g1 is None:
        return None
    tgt_id = pc.target.identity
    sample = [g for g in Gc.sample(bound) if g != Gc.identity]
    kernel = [g for g in sample if pc(g) == tgt_id]
    movers = [g for g in sample if pc(g) != tgt_id]
    wanted = -1 if collapsed == 1 else 1
    for g3 in kernel:
        for g2 in movers:
            if cs[collapsed](Gc.identity, g2, g3) != wanted:
                g2, g3 = Gc.mul(Gc.inv(g3), g2), Gc.inv(g3)
            a, b, o = ((collapsed, g2),), ((collapsed, g3),), ((other, g1),)
            return (o, a, b) if collapsed == 1 else (a, b, o)
    return None


def tensor_morphism_check(phis: Sequence[Homomorphism], cs: Sequence[CircularOrdering],
                          ds: Sequence[CircularOrdering], bound: int = 2, factor_bound: int = 3,
                          words: Sequence | None = None) -> ValidationReport:
    """Check how ``phi_1 * phi_2`` interacts with the free-product orderings.

    With both factor maps injective and order-preserving, every windowed triple
    must keep its value exactly.  If a factor map is non-injective but faux
    order-preserving, a triple with ``|c - d o phi| = 2`` is produced: first by
    the standard construction, otherwise by a deterministic search over the
    word window.  That witness is reported as a violation.
    """
    kinds = [faux_check(p, c, d, factor_bound) for p, c, d in zip(phis, cs, ds)]
    c = fp_circular(*cs)
    d = fp_circular(*ds)
    phi = free_product_hom(phis, c.group, d.group)
    words = tuple(words) if words is not None else c.group.words(bound, bound)
    region = {"factor_kinds": [k.kind for k in kinds], "words": len(words)}
    col = Collector()
    if all(k.kind == "order-preserving" for k in kinds) and all(p.injective for p in phis):
        region["mode"] = "order-preserving"
        images = {w: phi(w) for w in words}
        for t in itertools.product(words, repeat=3):
            if c(*t) != d(*(images[w] for w in t)):
                col.add("value_changed", t)
        region["triples"] = len(words) ** 3
        return col.report(region)
    if any(k.kind == "neither" for k in kinds):
        region["mode"] = "not-faux-factor"
        return ValidationReport("inapplicable", region, [{"kind": "factor_not_faux", "witness": None}])
    region["mode"] = "non-injective"
    collapsed = next((i for i, p in enumerate(phis) if not _injective_on(p, factor_bound)), None)
    if collapsed is None:
        return ValidationReport("inapplicable", region, [{"kind": "no_non_injective_factor", "witness": None}])
    t = _recipe_witness(phis, cs, collapsed, factor_bound)
    method = "construction"
    if t is None or abs(c(*t) - d(*map(phi, t))) != 2:
        method = "search"
        t = None
        images = {w: phi(w) for w in words}
        for cand in itertools.product(words, repeat=3):
            if abs(c(*cand) - d(*(images[w] for w in cand))) == 2:
                t = cand
                break
    region["method"] = method
    if t is None:
        region["triples"] = len(words) ** 3
        return ValidationReport("indeterminate", region, [{"kind": "no_witness_in_window", "witness": None}])
    gap = abs(c(*t) - d(*map(phi, t)))
    col.add("faux_gap", t, gap=gap, value=c(*t), image_value=d(*map(phi, t)))
    return col.report(region)


def _injective_on(phi: Homomorphism, bound: int) -> bool:
    seen = {}
    for g in phi.source.sample(bound):
        img = phi(g)
        if img in seen and seen[img] != g:
            return False
        seen[img] = g
    return True
