import pytest

from circorder.descriptors import (SchemaError, parse_amalgam, parse_cocycle, parse_group, parse_hom, parse_left,
                                   parse_ordering)
from circorder.errors import RepresentationError
from circorder.groups import CentralExtension, CyclicGroup, Ext
from circorder.orders import circle_standard, compare_circular, validate_circular, validate_left


def test_reversed_and_conjugate_orderings():
    G = parse_group({"kind": "semidirect_z_z2"})
    co = parse_ordering(G, {"kind": "conjugate", "by": [0, 1], "ordering": {"kind": "lex"}})
    assert validate_circular(co, bound=1).ok
    rev = parse_ordering(G, {"kind": "reversed", "of": {"kind": "lex"}})
    assert rev((0, 0), (1, 0), (2, 0)) == -parse_ordering(G, {"kind": "lex"})((0, 0), (1, 0), (2, 0))


def test_pullback_descriptor():
    G = parse_group({"kind": "cyclic", "n": 3})
    co = parse_ordering(G, {"kind": "pullback", "target": {"kind": "cyclic", "n": 6},
                            "hom": {"kind": "generator", "image": 2}, "ordering": {"kind": "std_circle"}})
    assert compare_circular(co, circle_standard(CyclicGroup(3)), G.elements()) is None


def test_difference_cocycle_and_central_extension():
    G = parse_group({"kind": "cyclic", "n": 4})
    f = parse_cocycle(G, {"kind": "difference", "left": {"kind": "from_ordering", "ordering": {"kind": "std_circle"}},
                          "right": {"kind": "from_ordering", "ordering": {"kind": "std_circle"}}})
    assert all(f(a, b) == 0 for a in range(4) for b in range(4))
    E = parse_group({"kind": "central_extension", "base": {"kind": "cyclic", "n": 4},
                     "cocycle": {"kind": "from_ordering", "ordering": {"kind": "std_circle"}}})
    assert isinstance(E, CentralExtension)
    assert E.pow(Ext(0, 1), 4) == Ext(1, 0)
    lo = parse_left(E, {"kind": "lift", "ordering": {"kind": "std_circle"}})
    assert validate_left(lo, bound=1).ok


def test_table_hom_injectivity():
    G, H = CyclicGroup(2), CyclicGroup(4)
    phi = parse_hom(G, H, {"kind": "table", "entries": [[0, 0], [1, 2]]})
    assert phi.injective and phi(1) == 2
    assert not parse_hom(G, H, {"kind": "trivial"}).injective


@pytest.mark.parametrize("bad", [
    {"kind": "zero"},
    {"kind": "linear"},
    {"kind": "lex"},
    {"kind": "mystery"},
    "std_circle",
])
def test_ordering_schema_errors(bad):
    with pytest.raises(SchemaError):
        parse_ordering(CyclicGroup(5), bad)


def test_amalgam_needs_injective_maps():
    z4 = {"group": {"kind": "cyclic", "n": 4}, "ordering": {"kind": "std_circle"}, "phi": {"kind": "trivial"}}
    with pytest.raises(RepresentationError):
        parse_amalgam({"core": {"group": {"kind": "cyclic", "n": 2}}, "factors": [z4, z4]})
