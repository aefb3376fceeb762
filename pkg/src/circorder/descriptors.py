"""Build groups, orderings, homomorphisms and amalgams from JSON descriptors."""
from __future__ import annotations

from typing import Any

from .amalgam import AmalgamDescriptor, circle_decomposition, finite_decomposition
from .catalog import cyclic_hom
from .errors import RepresentationError
from .extensions import Cocycle2, cocycle_from_circular, lift_group
from .freeproduct import fp_fold
from .groups import (AmalgamFactor, AmalgamGroup, CentralExtension, CircleRationals, CyclicGroup, DirectProduct,
                     FreeProduct, Group, Homomorphism, Integers, Rationals, SemidirectZ, identity_hom)
from .orders import (CircularOrdering, LeftOrderingWithZ, circle_standard, conjugate_circular, klein_lex_left,
                     lexicographic_left, linear_circular, pullback_circular, semidirect_lex_circular,
                     standard_left, table_circular)
from .serialization import decode_element


class SchemaError(ValueError):
    """A descriptor does not have the expected shape."""


def _get(d: dict, key: str, kind: str):
    if not isinstance(d, dict):
        raise SchemaError(f"{kind} descriptor must be an object, got {d!r}")
    if key not in d:
        raise SchemaError(f"{kind} descriptor is missing '{key}'")
    return d[key]


def _kind(d, what: str) -> str:
    k = _get(d, "kind", what)
    if not isinstance(k, str):
        raise SchemaError(f"{what} kind must be a string")
    return k


def _positive_int(v, name: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise SchemaError(f"'{name}' must be a positive integer")
    return v


def parse_group(d: Any) -> Group:
    kind = _kind(d, "group")
    if kind == "cyclic":
        return CyclicGroup(_positive_int(_get(d, "n", kind), "n"))
    if kind == "integers":
        return Integers()
    if kind == "rationals":
        return Rationals()
    if kind == "circle_rationals":
        return CircleRationals()
    if kind == "semidirect_z_z2":
        return SemidirectZ(2)
    if kind == "klein_bottle":
        return SemidirectZ(0)
    if kind == "direct_product":
        return DirectProduct(parse_group(_get(d, "left", kind)), parse_group(_get(d, "right", kind)))
    if kind == "central_extension":
        base = parse_group(_get(d, "base", kind))
        return CentralExtension(base, parse_cocycle(base, _get(d, "cocycle", kind)).f)
    if kind == "free_product":
        factors = _get(d, "factors", kind)
        if not isinstance(factors, list) or len(factors) < 2:
            raise SchemaError("a free product needs a list of at least two factors")
        return FreeProduct([parse_group(f) for f in factors])
    if kind == "amalgam":
        return parse_amalgam(d).group
    raise SchemaError(f"unknown group kind '{kind}'")


def parse_cocycle(group: Group, d: Any) -> Cocycle2:
    kind = _kind(d, "cocycle")
    if kind == "zero":
        return Cocycle2(group, lambda a, b: 0, "0")
    if kind == "from_ordering":
        return cocycle_from_circular(parse_ordering(group, _get(d, "ordering", kind)))
    if kind == "table":
        table = {}
        for entry in _get(d, "entries", kind):
            if not (isinstance(entry, list) and len(entry) == 3):
                raise SchemaError("cocycle table entries are [a, b, value]")
            a, b = decode_element(group, entry[0]), decode_element(group, entry[1])
            if isinstance(entry[2], bool) or not isinstance(entry[2], int):
                raise SchemaError("cocycle values must be integers")
            table[(a, b)] = entry[2]
        return Cocycle2(group, lambda a, b: table.get((a, b), 0), "table")
    if kind == "difference":
        return parse_cocycle(group, _get(d, "left", kind)) - parse_cocycle(group, _get(d, "right", kind))
    raise SchemaError(f"unknown cocycle kind '{kind}'")


def parse_hom(source: Group, target: Group, d: Any) -> Homomorphism:
    kind = _kind(d, "homomorphism")
    if kind == "identity":
        if source.key != target.key:
            raise SchemaError("identity map between different groups")
        return identity_hom(source)
    if kind == "generator":
        image = decode_element(target, _get(d, "image", kind))
        if isinstance(source, CyclicGroup):
            return cyclic_hom(source, target, image, d.get("name", "phi"))
        if isinstance(source, Integers):
            inj = image != target.identity
            return Homomorphism(source, target, lambda k: target.pow(image, k), injective=inj,
                                name=d.get("name", "phi"))
        raise SchemaError("'generator' maps need a cyclic or integer source")
    if kind == "trivial":
        return Homomorphism(source, target, lambda g: target.identity, injective=False, name="trivial")
    if kind == "table":
        table = {}
        for pair in _get(d, "entries", kind):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError("homomorphism table entries are [source, image]")
            table[decode_element(source, pair[0])] = decode_element(target, pair[1])
        inj = len(set(table.values())) == len(table)
        return Homomorphism(source, target, table.__getitem__, injective=inj, name="table")
    raise SchemaError(f"unknown homomorphism kind '{kind}'")


def parse_ordering(group: Group, d: Any) -> CircularOrdering:
    kind = _kind(d, "ordering")
    if kind == "std_circle":
        return circle_standard(group)
    if kind == "linear":
        if not isinstance(group, (Integers, Rationals)):
            raise SchemaError("'linear' needs Z or Q")
        return linear_circular(group)
    if kind == "zero":
        if len(group.sample(1)) > 2:
            raise SchemaError("the zero ordering only exists on groups of order at most 2")
        return CircularOrdering(group, lambda a, b, c: 0, "zero")
    if kind == "reversed":
        return parse_ordering(group, _get(d, "of", kind)).reversed()
    if kind == "table":
        entries = [decode_element(group, x) for x in _get(d, "entries", kind)]
        return table_circular(group, entries)
    if kind == "lex":
        if not isinstance(group, SemidirectZ) or group.modulus != 2:
            raise SchemaError("'lex' circular orderings are provided for Z x| Z/2")
        return semidirect_lex_circular(group, d.get("direction", 1))
    if kind == "pullback":
        target = parse_group(_get(d, "target", kind))
        phi = parse_hom(group, target, _get(d, "hom", kind))
        return pullback_circular(phi, parse_ordering(target, _get(d, "ordering", kind)))
    if kind == "conjugate":
        base = parse_ordering(group, _get(d, "ordering", kind))
        return conjugate_circular(base, decode_element(group, _get(d, "by", kind)))
    if kind == "free_product":
        if not isinstance(group, FreeProduct):
            raise SchemaError("'free_product' orderings need a free_product group")
        factors = _get(d, "factors", kind)
        if len(factors) != len(group.factors):
            raise SchemaError("one factor ordering per factor is required")
        orderings = [parse_ordering(g, o) for g, o in zip(group.factors, factors)]
        shape = d.get("shape")
        return fp_fold(orderings, _shape(shape) if shape is not None else None)
    raise SchemaError(f"unknown ordering kind '{kind}'")


def _shape(s):
    if isinstance(s, int):
        return s
    if isinstance(s, list) and len(s) == 2:
        return (_shape(s[0]), _shape(s[1]))
    raise SchemaError("fold shapes are nested pairs of factor indices")


def parse_left(group: Group, d: Any) -> LeftOrderingWithZ:
    kind = _kind(d, "left ordering")
    if kind == "std":
        z = decode_element(group, d.get("z", 1))
        return standard_left(group, z)
    if kind == "lex":
        z = decode_element(group, _get(d, "z", kind))
        return lexicographic_left(group, z, check_bound=4 if d.get("check", True) else None)
    if kind == "klein_lex":
        if not isinstance(group, SemidirectZ) or group.modulus != 0:
            raise SchemaError("'klein_lex' needs the klein_bottle group")
        return klein_lex_left(group, d.get("z_power", 2))
    if kind == "lift":
        if not isinstance(group, CentralExtension):
            raise SchemaError("'lift' needs the central_extension group of the ordering")
        lo = lift_group(parse_ordering(group.base, _get(d, "ordering", kind)))
        return lo
    raise SchemaError(f"unknown left ordering kind '{kind}'")


def parse_amalgam(d: Any) -> AmalgamDescriptor:
    core_d = _get(d, "core", "amalgam")
    core = parse_group(_get(core_d, "group", "core"))
    core_ordering = parse_ordering(core, core_d["ordering"]) if "ordering" in core_d else None
    factors = []
    for i, fd in enumerate(_get(d, "factors", "amalgam")):
        G = parse_group(_get(fd, "group", "factor"))
        co = parse_ordering(G, _get(fd, "ordering", "factor"))
        phi = parse_hom(core, G, _get(fd, "phi", "factor"))
        if not phi.injective:
            raise RepresentationError(f"the map into factor {i} is not injective")
        if G.is_finite:
            trans = fd.get("transversal")
            trans = [decode_element(G, x) for x in trans] if trans is not None else None
            dec = finite_decomposition(G, core, phi, trans)
        elif isinstance(G, CircleRationals) and isinstance(core, CyclicGroup):
            dec = circle_decomposition(core, phi)
        else:
            raise SchemaError(f"no coset decomposition available for factor {i} ({G.name})")
        factors.append(AmalgamFactor(G, phi, dec, co))
    return AmalgamDescriptor(core, factors, core_ordering, d.get("name", "amalgam"))
