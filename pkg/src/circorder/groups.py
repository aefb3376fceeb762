"""Groups with canonical normal forms.

Elements are plain, hashable Python values so that equality of normal forms is
ordinary ``==``:

* integers and residues are ``int``;
* rationals and rational points of the circle are ``fractions.Fraction``;
* direct and semidirect products use 2-tuples ``(left, right)``;
* central-extension elements are :class:`Ext` pairs ``(n, a)``;
* free-product words are tuples of syllables ``((factor, element), ...)``;
* amalgam elements are :class:`Word` values ``(core, reps)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, NamedTuple, Sequence

from .errors import NotInjectiveError, RepresentationError
from .report import Collector, ValidationReport

Element = Any


class Ext(NamedTuple):
    """Element ``(n, a)`` of a central extension of a base group by Z."""

    n: int
    a: Element


class Word(NamedTuple):
    """Amalgam normal form ``core * rep_1 * ... * rep_k``.

    ``reps`` is a tuple of ``(factor_index, transversal_rep)`` with adjacent
    factor indices distinct and no identity reps.
    """

    core: Element
    reps: tuple = ()


class Group:
    """A group with canonical normal forms.

    Subclasses implement ``mul``/``inv`` and set ``identity``.  Finite groups
    override :meth:`elements`; every group provides a deterministic
    :meth:`window` of elements controlled by a single size bound.
    """

    identity: Element = None
    name: str = "G"

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    @property
    def key(self):
        """Hashable description used to decide whether two groups are the same."""
        return (type(self).__name__, self.name)

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> tuple:
        raise TypeError(f"{self.name} is not enumerable")

    def window(self, bound: int) -> tuple:
        return self.elements()

    def contains(self, g) -> bool:
        return True

    def sample(self, bound: int) -> tuple:
        """Finite test region: all elements when finite, else ``window(bound)``."""
        return self.elements() if self.is_finite else self.window(bound)

    # derived operations

    def prod(self, *gs):
        out = self.identity
        for g in gs:
            out = self.mul(out, g)
        return out

    def pow(self, g, k: int):
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        while k:
            if k & 1:
                out = self.mul(out, g)
            k >>= 1
            if k:
                g = self.mul(g, g)
        return out

    def conj(self, g, h):
        """``h^-1 g h``."""
        return self.mul(self.inv(h), self.mul(g, h))

    def commutes(self, a, b) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def __repr__(self) -> str:
        return self.name


class CyclicGroup(Group):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        self.n = n
        self.identity = 0
        self.name = f"Z/{n}"

    @property
    def key(self):
        return ("cyclic", self.n)

    @property
    def is_finite(self) -> bool:
        return True

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return -a % self.n

    def pow(self, g, k):
        return g * k % self.n

    def elements(self):
        return tuple(range(self.n))

    def contains(self, g) -> bool:
        return isinstance(g, int) and 0 <= g < self.n


class Integers(Group):
    identity = 0
    name = "Z"

    @property
    def key(self):
        return ("integers",)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def pow(self, g, k):
        return g * k

    def window(self, bound):
        return tuple(range(-bound, bound + 1))

    def contains(self, g) -> bool:
        return isinstance(g, int)


class Rationals(Group):
    identity = Fraction(0)
    name = "Q"

    @property
    def key(self):
        return ("rationals",)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def pow(self, g, k):
        return g * k

    def window(self, bound):
        vals = {Fraction(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1)}
        return tuple(sorted(vals))

    def contains(self, g) -> bool:
        return isinstance(g, (int, Fraction))


class CircleRationals(Group):
    """Rational points of the circle, i.e. Q/Z, as fractions in [0, 1)."""

    identity = Fraction(0)
    name = "Q/Z"

    @property
    def key(self):
        return ("circle_rationals",)

    def mul(self, a, b):
        return (a + b) % 1

    def inv(self, a):
        return -a % 1

    def pow(self, g, k):
        return g * k % 1

    def window(self, bound):
        vals = {Fraction(p, q) for q in range(1, bound + 1) for p in range(q)}
        return tuple(sorted(vals))

    def contains(self, g) -> bool:
        return isinstance(g, Fraction) and 0 <= g < 1


class SemidirectZ(Group):
    """``Z x| C`` where the generator of ``C`` acts on Z by negation.

    Elements ``(m, e)`` stand for ``t^m s^e``.  ``modulus=2`` gives Z x| Z/2;
    ``modulus=0`` gives the Klein-bottle group <x, y | x y x^-1 = y^-1> with
    ``(m, n) = y^m x^n``.
    """

    def __init__(self, modulus: int = 2):
        if modulus not in (0, 2):
            raise ValueError("only Z/2 or Z can act on Z by negation")
        self.modulus = modulus
        self.identity = (0, 0)
        self.name = "Z x| Z/2" if modulus == 2 else "K"

    @property
    def key(self):
        return ("semidirect_z", self.modulus)

    def _e(self, e):
        return e % 2 if self.modulus == 2 else e

    def mul(self, a, b):
        m, e = a
        m2, e2 = b
        return (m - m2 if e % 2 else m + m2, self._e(e + e2))

    def inv(self, a):
        m, e = a
        return (m if e % 2 else -m, self._e(-e))

    def window(self, bound):
        es = (0, 1) if self.modulus == 2 else range(-bound, bound + 1)
        return tuple((m, e) for e in es for m in range(-bound, bound + 1))

    def contains(self, g) -> bool:
        return (
            isinstance(g, tuple)
            and len(g) == 2
            and all(isinstance(x, int) for x in g)
            and (self.modulus == 0 or g[1] in (0, 1))
        )


def klein_bottle_group() -> SemidirectZ:
    return SemidirectZ(0)


class DirectProduct(Group):
    def __init__(self, left: Group, right: Group):
        self.left, self.right = left, right
        self.identity = (left.identity, right.identity)
        self.name = f"({left.name} x {right.name})"

    @property
    def key(self):
        return ("direct_product", self.left.key, self.right.key)

    @property
    def is_finite(self):
        return self.left.is_finite and self.right.is_finite

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    def elements(self):
        return tuple(itertools.product(self.left.elements(), self.right.elements()))

    def window(self, bound):
        return tuple(itertools.product(self.left.sample(bound), self.right.sample(bound)))

    def contains(self, g):
        return isinstance(g, tuple) and len(g) == 2 and self.left.contains(g[0]) and self.right.contains(g[1])


class Subgroup(Group):
    """A subgroup of ``parent`` given by a membership predicate; elements are parent elements."""

    def __init__(self, parent: Group, member: Callable[[Element], bool], name: str = "H",
                 elements: Sequence | None = None):
        self.parent = parent
        self.member = member
        self.identity = parent.identity
        self.name = name
        self._elements = tuple(elements) if elements is not None else None

    @property
    def key(self):
        return ("subgroup", self.parent.key, self.name)

    @property
    def is_finite(self) -> bool:
        return self._elements is not None

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def inv(self, a):
        return self.parent.inv(a)

    def elements(self):
        if self._elements is None:
            return super().elements()
        return self._elements

    def window(self, bound):
        return tuple(g for g in self.parent.sample(bound) if self.member(g))

    def contains(self, g) -> bool:
        return self.parent.contains(g) and bool(self.member(g))

    def inclusion(self) -> "Homomorphism":
        return Homomorphism(self, self.parent, lambda g: g, injective=True, name="incl")


class CentralExtension(Group):
    """Z x base with ``(n, a)(m, b) = (n + m + f(a, b), ab)`` for a normalized 2-cocycle f."""

    def __init__(self, base: Group, cocycle: Callable[[Element, Element], int], *,
                 name: str | None = None, check_bound: int = 2):
        self.base = base
        self.f = cocycle
        self.identity = Ext(0, base.identity)
        self.name = name or f"~{base.name}"
        sample = base.sample(check_bound)
        for g in sample:
            if cocycle(base.identity, g) != 0 or cocycle(g, base.identity) != 0:
                raise RepresentationError(f"cocycle is not normalized at {g!r}")

    @property
    def key(self):
        return ("central_extension", self.base.key, self.name)

    def mul(self, x, y):
        n, a = x
        m, b = y
        return Ext(n + m + self.f(a, b), self.base.mul(a, b))

    def inv(self, x):
        n, a = x
        ai = self.base.inv(a)
        return Ext(-n - self.f(a, ai), ai)

    def window(self, bound):
        return tuple(Ext(n, a) for n in range(-bound, bound + 1) for a in self.base.sample(bound))

    def contains(self, g):
        return isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], int) and self.base.contains(g[1])

    def central(self, n: int) -> Ext:
        return Ext(n, self.base.identity)

    def section(self, a) -> Ext:
        return Ext(0, a)


def central_extension_group(base: Group, f, **kwargs) -> CentralExtension:
    return CentralExtension(base, f, **kwargs)


class FreeProduct(Group):
    """Free product of two or more factors; words are tuples of ``(factor, element)``."""

    identity = ()

    def __init__(self, factors: Sequence[Group], name: str | None = None):
        if len(factors) < 2:
            raise ValueError("a free product needs at least two factors")
        self.factors = tuple(factors)
        self.name = name or " * ".join(f.name for f in self.factors)

    @property
    def key(self):
        return ("free_product", tuple(f.key for f in self.factors))

    def mul(self, u, v):
        if not u:
            return v
        if not v:
            return u
        i, j = len(u), 0
        factors = self.factors
        while i > 0 and j < len(v) and u[i - 1][0] == v[j][0]:
            k = v[j][0]
            fac = factors[k]
            g = fac.mul(u[i - 1][1], v[j][1])
            if g == fac.identity:
                i -= 1
                j += 1
                continue
            return u[: i - 1] + ((k, g),) + v[j + 1:]
        return u[:i] + v[j:]

    def inv(self, u):
        factors = self.factors
        return tuple((k, factors[k].inv(g)) for k, g in reversed(u))

    def letter(self, k: int, g) -> tuple:
        return () if g == self.factors[k].identity else ((k, g),)

    def normalize(self, syllables: Iterable) -> tuple:
        """Reduce an arbitrary syllable list (identities, repeated factors) to normal form."""
        out = ()
        for k, g in syllables:
            out = self.mul(out, self.letter(k, g))
        return out

    def words(self, max_syllables: int, factor_bound: int) -> tuple:
        letters = [
            [g for g in f.sample(factor_bound) if g != f.identity] for f in self.factors
        ]
        out = [()]
        layer = [()]
        for _ in range(max_syllables):
            nxt = []
            for w in layer:
                last = w[-1][0] if w else None
                for k, gs in enumerate(letters):
                    if k == last:
                        continue
                    nxt.extend(w + ((k, g),) for g in gs)
            out.extend(nxt)
            layer = nxt
        return tuple(out)

    def window(self, bound):
        return self.words(bound, bound)

    def contains(self, u):
        if not isinstance(u, tuple):
            return False
        prev = None
        for syl in u:
            if not (isinstance(syl, tuple) and len(syl) == 2):
                return False
            k, g = syl
            if not (isinstance(k, int) and 0 <= k < len(self.factors)) or k == prev:
                return False
            f = self.factors[k]
            if not f.contains(g) or g == f.identity:
                return False
            prev = k
        return True

    def embedding(self, k: int) -> "Homomorphism":
        return Homomorphism(self.factors[k], self, lambda g, k=k: self.letter(k, g), injective=True,
                            name=f"incl_{k}")


def free_product_group(factors: Sequence[Group]) -> FreeProduct:
    return FreeProduct(factors)


@dataclass(eq=False)
class Homomorphism:
    source: Group
    target: Group
    apply: Callable[[Element], Element]
    injective: bool = False
    name: str = "phi"

    def __call__(self, g):
        return self.apply(g)

    def check(self, bound: int = 3) -> ValidationReport:
        """Verify the homomorphism law, and injectivity when flagged, on a window."""
        src, tgt = self.source, self.target
        sample = src.sample(bound)
        col = Collector()
        if self.apply(src.identity) != tgt.identity:
            col.add("identity", src.identity)
        images = {}
        for a in sample:
            ia = self.apply(a)
            if self.injective and ia in images and images[ia] != a:
                col.add("injectivity", (images[ia], a))
            images.setdefault(ia, a)
            for b in sample:
                if self.apply(src.mul(a, b)) != tgt.mul(ia, self.apply(b)):
                    col.add("multiplicativity", (a, b))
        return col.report({"elements": len(sample), "pairs": len(sample) ** 2})

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self o other``."""
        return Homomorphism(other.source, self.target, lambda g: self.apply(other.apply(g)),
                            injective=self.injective and other.injective,
                            name=f"{self.name}.{other.name}")


def identity_hom(group: Group) -> Homomorphism:
    return Homomorphism(group, group, lambda g: g, injective=True, name="id")


def require_injective(phi: Homomorphism, bound: int = 3) -> None:
    if not phi.injective:
        raise NotInjectiveError(f"{phi.name} is not flagged injective")
    seen = {}
    for g in phi.source.sample(bound):
        img = phi(g)
        if img in seen and seen[img] != g:
            raise NotInjectiveError(f"{phi.name} identifies two elements", (seen[img], g))
        seen[img] = g


# amalgamated free products

Decomposition = Callable[[Element], tuple]


@dataclass(eq=False)
class AmalgamFactor:
    """One factor ``G_i`` of an amalgam with its copy of the core and a coset transversal.

    ``decompose(g)`` must return ``(h, rep)`` with ``g = phi(h) * rep``, where
    ``rep`` comes from a fixed set of right coset representatives and is the
    identity exactly when ``g`` lies in ``phi(H)``.
    """

    group: Group
    phi: Homomorphism
    decompose: Decomposition
    ordering: Any = None


class AmalgamGroup(Group):
    """``*_i G_i (H_i = phi_i(H))`` with normal forms ``h g_1 ... g_k``.

    The decomposition callbacks are re-verified on every call.
    """

    def __init__(self, core: Group, factors: Sequence[AmalgamFactor], name: str | None = None):
        if not factors:
            raise ValueError("an amalgam needs at least one factor")
        self.core = core
        self.factors = tuple(factors)
        self.identity = Word(core.identity, ())
        self.name = name or "*_H ".join(f.group.name for f in self.factors)

    @property
    def key(self):
        return ("amalgam", self.core.key, tuple(f.group.key for f in self.factors), self.name)

    def split(self, i: int, g) -> tuple:
        fac = self.factors[i]
        h, rep = fac.decompose(g)
        if fac.group.mul(fac.phi(h), rep) != g:
            raise RepresentationError(
                f"decomposition of {g!r} in factor {i} returned ({h!r}, {rep!r}), "
                "which does not multiply back")
        if rep != fac.group.identity:
            h2, rep2 = fac.decompose(rep)
            if h2 != self.core.identity or rep2 != rep:
                raise RepresentationError(f"representative {rep!r} of factor {i} is not canonical")
        return h, rep

    def left_mul_factor(self, i: int, x, w: Word) -> Word:
        """``x * w`` for ``x`` in factor ``i``."""
        fac = self.factors[i]
        y = fac.group.mul(x, fac.phi(w.core))
        rest = w.reps
        if rest and rest[0][0] == i:
            y = fac.group.mul(y, rest[0][1])
            rest = rest[1:]
        h, rep = self.split(i, y)
        if rep == fac.group.identity:
            return Word(h, rest)
        return Word(h, ((i, rep),) + rest)

    def embed(self, i: int, g) -> Word:
        return self.left_mul_factor(i, g, self.identity)

    def embed_core(self, h) -> Word:
        return Word(h, ())

    def embedding(self, i: int) -> Homomorphism:
        return Homomorphism(self.factors[i].group, self, lambda g, i=i: self.embed(i, g),
                            injective=True, name=f"delta_{i}")

    def mul(self, u: Word, v: Word) -> Word:
        out = v
        for i, r in reversed(u.reps):
            out = self.left_mul_factor(i, r, out)
        return Word(self.core.mul(u.core, out.core), out.reps)

    def inv(self, u: Word) -> Word:
        out = Word(self.core.inv(u.core), ())
        for i, r in u.reps:
            out = self.left_mul_factor(i, self.factors[i].group.inv(r), out)
        return out

    def normalize(self, w: Word) -> Word:
        """Re-normalize a possibly non-canonical word by multiplying it out."""
        out = self.embed_core(w.core)
        for i, r in w.reps:
            out = self.mul(out, self.embed(i, r))
        return out

    def transversal(self, i: int, bound: int) -> tuple:
        fac = self.factors[i]
        reps = []
        for g in fac.group.sample(bound):
            _, rep = self.split(i, g)
            if rep != fac.group.identity and rep not in reps:
                reps.append(rep)
        return tuple(reps)

    def words(self, max_reps: int, bound: int) -> tuple:
        trans = [self.transversal(i, bound) for i in range(len(self.factors))]
        seqs = [()]
        layer = [()]
        for _ in range(max_reps):
            nxt = []
            for s in layer:
                last = s[-1][0] if s else None
                for i, reps in enumerate(trans):
                    if i != last:
                        nxt.extend(s + ((i, r),) for r in reps)
            seqs.extend(nxt)
            layer = nxt
        return tuple(Word(h, s) for s in seqs for h in self.core.sample(bound))

    def window(self, bound):
        return self.words(bound, bound)

    def contains(self, w) -> bool:
        if not isinstance(w, Word) or not self.core.contains(w.core):
            return False
        prev = None
        for i, r in w.reps:
            if i == prev or not (0 <= i < len(self.factors)):
                return False
            if r == self.factors[i].group.identity or self.split(i, r) != (self.core.identity, r):
                return False
            prev = i
        return True


def amalgam_group(core: Group, factors: Sequence[AmalgamFactor], name: str | None = None) -> AmalgamGroup:
    return AmalgamGroup(core, factors, name)


def table_decomposition(factor: Group, core: Group, phi: Homomorphism, transversal: Sequence) -> Decomposition:
    """Decomposition for a finite factor from an explicit transversal of right cosets ``phi(H) rep``."""
    table = {}
    for h in core.elements():
        for rep in transversal:
            g = factor.mul(phi(h), rep)
            if g in table:
                raise RepresentationError(f"transversal is not a set of distinct coset representatives ({g!r})")
            table[g] = (h, rep)
    if len(table) != len(factor.elements()):
        raise RepresentationError("transversal does not cover the factor")
    return table.__getitem__


def check_group_axioms(group: Group, bound: int = 2) -> ValidationReport:
    """Associativity, identity and inverses on every triple of the test region."""
    sample = group.sample(bound)
    col = Collector()
    e = group.identity
    for a in sample:
        if group.mul(a, e) != a or group.mul(e, a) != a:
            col.add("identity", a)
        if group.mul(a, group.inv(a)) != e or group.mul(group.inv(a), a) != e:
            col.add("inverse", a)
        for b in sample:
            ab = group.mul(a, b)
            if not group.contains(ab):
                col.add("closure", (a, b))
            for c in sample:
                if group.mul(ab, c) != group.mul(a, group.mul(b, c)):
                    col.add("associativity", (a, b, c))
    return col.report({"elements": len(sample), "triples": len(sample) ** 3})
