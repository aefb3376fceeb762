"""Exact JSON encoding of group elements and reports.

Integers and residues stay integers, fractions become ``[num, den]``,
products and extension pairs become two-element arrays, free-product words are
arrays of ``[factor, element]`` syllables and amalgam words are objects
``{"core": ..., "reps": [[factor, rep], ...]}``.  No floats are ever emitted.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Any

from .errors import RepresentationError
from .groups import (AmalgamGroup, CentralExtension, CircleRationals, CyclicGroup, DirectProduct, Ext,
                     FreeProduct, Group, Integers, Rationals, SemidirectZ, Subgroup, Word)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, Word):
        return {"core": to_jsonable(obj.core), "reps": [[i, to_jsonable(r)] for i, r in obj.reps]}
    if isinstance(obj, (tuple, list)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((to_jsonable(x) for x in obj), key=repr)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, float):
        raise TypeError("floating point values are not part of the wire format")
    return repr(obj)


def _int(data) -> int:
    if isinstance(data, bool) or not isinstance(data, int):
        raise RepresentationError(f"expected an integer, got {data!r}")
    return data


def _fraction(data) -> Fraction:
    if isinstance(data, int) and not isinstance(data, bool):
        return Fraction(data)
    if isinstance(data, list) and len(data) == 2:
        num, den = _int(data[0]), _int(data[1])
        if den <= 0:
            raise RepresentationError("fraction denominators must be positive")
        return Fraction(num, den)
    raise RepresentationError(f"expected an integer or [num, den], got {data!r}")


def _pair(data) -> tuple:
    if not (isinstance(data, list) and len(data) == 2):
        raise RepresentationError(f"expected a two-element array, got {data!r}")
    return data[0], data[1]


def decode_element(group: Group, data) -> Any:
    """Parse the JSON form of an element of ``group`` into its normal form."""
    custom = getattr(group, "decode", None)
    if custom is not None:
        return custom(data)
    if isinstance(group, CyclicGroup):
        r = _int(data)
        if not 0 <= r < group.n:
            raise RepresentationError(f"{r} is not a residue mod {group.n}")
        return r
    if isinstance(group, Integers):
        return _int(data)
    if isinstance(group, Rationals):
        return _fraction(data)
    if isinstance(group, CircleRationals):
        q = _fraction(data)
        if not 0 <= q < 1:
            raise RepresentationError(f"circle point {q} is outside [0, 1)")
        return q
    if isinstance(group, SemidirectZ):
        m, e = _pair(data)
        g = (_int(m), _int(e))
        if not group.contains(g):
            raise RepresentationError(f"{data!r} is not an element of {group.name}")
        return g
    if isinstance(group, DirectProduct):
        a, b = _pair(data)
        return (decode_element(group.left, a), decode_element(group.right, b))
    if isinstance(group, CentralExtension):
        n, a = _pair(data)
        return Ext(_int(n), decode_element(group.base, a))
    if isinstance(group, FreeProduct):
        if not isinstance(data, list):
            raise RepresentationError(f"expected a syllable array, got {data!r}")
        syllables = []
        for syl in data:
            k, g = _pair(syl)
            k = _int(k)
            if not 0 <= k < len(group.factors):
                raise RepresentationError(f"factor index {k} out of range")
            syllables.append((k, decode_element(group.factors[k], g)))
        return group.normalize(syllables)
    if isinstance(group, AmalgamGroup):
        if not isinstance(data, dict) or set(data) - {"core", "reps"}:
            raise RepresentationError(f"expected {{'core', 'reps'}}, got {data!r}")
        core = decode_element(group.core, data.get("core", to_jsonable(group.core.identity)))
        reps = []
        for syl in data.get("reps", []):
            i, r = _pair(syl)
            i = _int(i)
            if not 0 <= i < len(group.factors):
                raise RepresentationError(f"factor index {i} out of range")
            reps.append((i, decode_element(group.factors[i].group, r)))
        return group.normalize(Word(core, tuple(reps)))
    if isinstance(group, Subgroup):
        g = decode_element(group.parent, data)
        if not group.member(g):
            raise RepresentationError(f"{data!r} is not in {group.name}")
        return g
    raise RepresentationError(f"no JSON element format for {group.name}")
