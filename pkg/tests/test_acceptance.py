"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
import itertools
import json
import sys
import time
from fractions import Fraction

import pytest
from sympy import totient

from circorder import cli
from circorder.amalgam import (bijection_roundtrip, build_lifted_amalgam, check_compatibility,
                               check_extends_factors, check_extends_lifts, check_theta,
                               derive_circular_on_amalgam, derive_left_on_lifted_amalgam)
from circorder.catalog import (doubled_z4_descriptor, fifths_descriptor, integer_free_product, integer_lex_left,
                               klein_left_on_lifted_amalgam, semidirect_c2)
from circorder.extensions import (coboundary, coboundary_witness, cocycle_from_circular, cone_alpha_phi,
                                  conjugate_quotient_check, conjugation_coboundary, conjugation_normality_check,
                                  convex_embed_in_lift, convex_positive_cone, convex_splitting_d, lift_group,
                                  phi_g_alpha_beta, roundtrip_eta, roundtrip_nu, Cocycle2)
from circorder.freeproduct import (base_circular, fp_fold, left_fold_shape, minimal_reduction, right_fold_shape,
                                   tensor_morphism_check)
from circorder.groups import CyclicGroup, Ext, FreeProduct, Homomorphism, Integers, Subgroup, Word, identity_hom
from circorder.orders import (circle_standard, conjugate_circular, enumerate_circular_orderings, is_cofinal,
                              is_convex_circular, klein_lex_left, linear_circular, linear_to_circular,
                              standard_left, validate_circular, validate_left)
from circorder.report import Verdict


def test_01_axioms_on_cyclic_groups(criterion):
    with criterion(1, "std circular orderings on Z_n, n = 2..8, all quadruples, < 5 s"):
        start = time.perf_counter()
        for n in range(2, 9):
            G = CyclicGroup(n)
            rep = validate_circular(circle_standard(G), elements=G.elements())
            assert rep.ok, (n, rep.violations)
            assert rep.checked_region["quadruples"] == n ** 4
        assert time.perf_counter() - start < 5


def test_02_lift_quotient_round_trips(criterion):
    with criterion(2, "f_< = f_c, eta and nu round trips exact"):
        for n in range(2, 9):
            G = CyclicGroup(n)
            rep = roundtrip_eta(circle_standard(G), elements=G.elements())
            assert rep.ok, (n, rep.violations)
            assert rep.checked_region["eta"]["triples"] == n ** 3
        for lo in (integer_lex_left(), klein_lex_left()):
            rep = roundtrip_nu(lo, bound=2, levels=3)
            assert rep.ok, (lo.name, rep.violations)


def test_03_lift_relations(criterion):
    with criterion(3, "lift relations: (0,1)^n = (1,0), torsion-free window, Klein relation"):
        for n in range(2, 9):
            lo = lift_group(circle_standard(CyclicGroup(n)))
            E = lo.group
            assert E.pow(Ext(0, 1), n) == Ext(1, 0)
            for x in E.window(2):
                if x == E.identity:
                    continue
                assert all(E.pow(x, k) != E.identity for k in range(1, 2 * n + 1)), x
        E = lift_group(semidirect_c2()).group
        x, y = Ext(0, (0, 1)), Ext(0, (1, 0))
        assert E.mul(x, E.mul(y, E.inv(x))) == E.inv(y)
        assert E.inv(y) == Ext(-1, (-1, 0))


def test_04_enumeration_matches_totient(criterion):
    with criterion(4, "enumeration returns phi(n) orderings, each valid"):
        for n in range(3, 8):
            G = CyclicGroup(n)
            found = enumerate_circular_orderings(G)
            assert len(found) == int(totient(n)), n
            for co in found:
                assert validate_circular(co, elements=G.elements()).ok


def test_05_fifths_obstruction(criterion, tmp_path, capsys):
    with criterion(5, "no compatible pair of factor orderings for the Z/5 gluing; CLI exits 1"):
        core = CyclicGroup(5)
        for r1, r2 in itertools.product((False, True), repeat=2):
            desc = fifths_descriptor(r1, r2)
            rep = check_compatibility(desc)
            assert rep.status == "fail", (r1, r2)
            assert rep.checked_region["triples"] == 125
            t = tuple(rep.witness)
            pulled = [fac.ordering(*(fac.phi(h) for h in t)) for fac in desc.factors]
            assert pulled[0] != pulled[1]
            assert all(h in core.elements() for h in t)
        request = {"amalgam": {
            "core": {"group": {"kind": "cyclic", "n": 5}},
            "factors": [
                {"group": {"kind": "circle_rationals"}, "ordering": {"kind": "std_circle"},
                 "phi": {"kind": "generator", "image": [1, 5]}},
                {"group": {"kind": "circle_rationals"}, "ordering": {"kind": "std_circle"},
                 "phi": {"kind": "generator", "image": [2, 5]}},
            ]}}
        path = tmp_path / "fifths.json"
        path.write_text(json.dumps(request))
        code = cli.main(["compat-check", str(path), "--json"])
        out = json.loads(capsys.readouterr().out)
        assert code == 1
        assert out["report"]["violations"][0]["witness"] is not None


def test_06_free_product_window(criterion):
    with criterion(6, "Z*Z window: axioms, invariance, restrictions, base rules, move order, < 60 s"):
        start = time.perf_counter()
        co = integer_free_product()
        G = co.group
        words = G.words(2, 2)
        assert len(words) == 41
        rep = validate_circular(co, elements=words, multipliers=words)
        assert rep.ok, rep.violations

        lin = linear_circular(Integers())
        letters = [k for k in range(-2, 3)]
        for i in range(2):
            for t in itertools.product(letters, repeat=3):
                assert co(*(G.letter(i, k) for k in t)) == lin(*t)

        nonzero = [k for k in letters if k]
        e = G.identity
        for g in nonzero:
            for h in nonzero:
                assert co(G.letter(0, g), G.letter(1, h), e) == 1
                for g2 in nonzero:
                    assert co(G.letter(0, g), G.letter(0, g2), G.letter(1, h)) == lin(g, g2, 0)
                    assert co(G.letter(1, h), G.letter(0, g), G.letter(0, g2)) == lin(g, g2, 0)
                    assert co(G.letter(0, g), G.letter(1, h), G.letter(1, g2)) == lin(0, h, g2)

        priorities = list(itertools.permutations((1, 2, 3)))
        for t in itertools.product(words, repeat=3):
            finals = {minimal_reduction(t, G, p)[0] for p in priorities}
            assert len(finals) == 1, t
            final = finals.pop()
            assert all(len(w) <= 1 for w in final)
            assert base_circular(final, co.factors) == co(*t)
        assert time.perf_counter() - start < 60


def test_07_free_product_morphisms(criterion):
    with criterion(7, "doubling maps preserve the ordering; collapsing map gives a faux gap of 2"):
        Z = Integers()
        lin = linear_circular(Z)
        double = Homomorphism(Z, Z, lambda k: 2 * k, injective=True, name="double")
        rep = tensor_morphism_check([double, double], [lin, lin], [lin, lin])
        assert rep.status == "pass", rep.violations

        T = CyclicGroup(1)
        trivial_ordering = circle_standard(T)
        collapse = Homomorphism(Z, T, lambda k: 0, injective=False, name="collapse")
        rep = tensor_morphism_check([identity_hom(Z), collapse], [lin, lin], [lin, trivial_ordering])
        assert rep.status == "fail"
        v = rep.violations[0]
        assert v["kind"] == "faux_gap" and v["gap"] == 2
        c = integer_free_product()
        t = v["witness"]
        target = FreeProduct([Z, T])
        image = [target.normalize((k, identity_hom(Z)(g) if k == 0 else 0) for k, g in w) for w in t]
        d = fp_fold([lin, trivial_ordering])
        assert abs(c(*t) - d(*image)) == 2


def test_08_fold_associativity(criterion):
    with criterion(8, "both fold shapes of Z*Z*Z agree on the window"):
        Z = Integers()
        lin = linear_circular(Z)
        left = fp_fold([lin, lin, lin], left_fold_shape(3))
        right = fp_fold([lin, lin, lin], right_fold_shape(3))
        words = FreeProduct([Z, Z, Z]).words(2, 1)
        for t in itertools.product(words, repeat=3):
            assert left(*t) == right(*t), t


def test_09_convex_subgroup(criterion):
    with criterion(9, "Z convex in Z x| Z/2: cone, splitting identity, convex embedding"):
        co = semidirect_c2()
        G = co.group
        in_h = lambda g: g[1] == 0
        assert is_convex_circular(co, in_h, bound=3).ok
        cone = convex_positive_cone(co, in_h, bound=3)
        hs = [(m, 0) for m in range(-3, 4)]
        for h in hs:
            assert cone.membership(h) is (Verdict.YES if h[0] > 0 else Verdict.NO)
        d, rep = convex_splitting_d(co, in_h, hs, bound=3, cone=cone)
        assert rep.ok, rep.violations
        assert (d((1, 0)), d((-1, 0))) == (0, 1)
        H = Subgroup(G, in_h, "Z")
        _, rep = convex_embed_in_lift(co, d, H, bound=2)
        assert rep.ok, rep.violations


def test_10_doubled_z4_end_to_end(criterion):
    with criterion(10, "Z/4 *_{Z/2} Z/4 from the Klein-bottle order and back, < 60 s"):
        start = time.perf_counter()
        desc = doubled_z4_descriptor()
        la = build_lifted_amalgam(desc, bound=2)
        L = la.group
        a, b = la.embeddings[0](Ext(0, 1)), la.embeddings[1](Ext(0, 1))
        assert L.pow(a, 2) == L.pow(b, 2)
        assert L.pow(a, 4) == la.z
        assert len(L.mul(a, L.mul(b, a)).reps) == 3

        lo = klein_left_on_lifted_amalgam(la)
        rep = check_extends_lifts(la, lo, bound=2)
        assert rep.ok, rep.violations
        assert is_cofinal(la.z, lo, bound=2) is Verdict.YES

        c = derive_circular_on_amalgam(la, lo, bound=2)
        rep = check_extends_factors(desc, c, bound=2)
        assert rep.ok and rep.checked_region["factor_0_triples"] == 64
        words = desc.group.words(3, 2)
        rep = validate_circular(c, elements=words)
        assert rep.ok, rep.violations

        lo2 = derive_left_on_lifted_amalgam(la, c, bound=2)
        assert validate_left(lo2, elements=L.words(2, 2)).ok
        assert check_theta(la, cocycle_from_circular(c)).ok
        rep = bijection_roundtrip(la, lo, bound=2)
        assert rep.ok, rep.violations
        assert time.perf_counter() - start < 60


def test_11_conjugation_formulas(criterion):
    with criterion(11, "conjugate quotients, phi identically zero, cones and normality"):
        for n in range(2, 8):
            lo = standard_left(Integers(), n)
            for g in range(n):
                rep = conjugate_quotient_check(lo, g, list(range(n)))
                assert rep.ok, (n, g, rep.violations)
        lo = lift_group(semidirect_c2())
        window = lo.group.window(1)
        for g in window:
            assert conjugate_quotient_check(lo, g, window).ok, g

        zero = lambda a: 0
        for n in (3, 5):
            G = CyclicGroup(n)
            co = circle_standard(G)
            for g in range(1, n):
                phi, rep = phi_g_alpha_beta(g, co, co, co, zero, zero, elements=G.elements())
                assert rep.ok and all(phi(a) == 0 for a in G.elements()), (n, g)

        c2 = semidirect_c2()
        for w in ((0, 0), (0, 1), (1, 1)):
            cone = cone_alpha_phi(c2, conjugate_circular(c2, w), conjugation_coboundary(c2, w), zero, bound=2)
            assert validate_left(cone, bound=1).ok, w
            for g in ((1, 0), (0, 1), (-1, 1)):
                assert conjugation_normality_check(c2, w, g, bound=2).ok, (w, g)
        co = linear_to_circular(integer_lex_left())
        first = lambda a: a[0]
        cone = cone_alpha_phi(co, co, zero, first, bound=2)
        assert validate_left(cone, bound=1).ok
        assert conjugation_normality_check(co, (0, 0), (1, 1), first, bound=2).ok


def test_12_coboundary_solver(criterion):
    with criterion(12, "coboundary solver: zero, obstruction, re-verified witnesses"):
        G = CyclicGroup(5)
        d = coboundary_witness(Cocycle2(G, lambda a, b: 0))
        assert d is not None and all(v == 0 for v in d.values())
        assert coboundary_witness(cocycle_from_circular(circle_standard(CyclicGroup(3)))) is None

        G = CyclicGroup(6)
        target = coboundary(lambda a: (a * a) % 4 if a else 0, G)
        d = coboundary_witness(target)
        assert d is not None
        again = coboundary(d.__getitem__, G)
        assert all(again(a, b) == target(a, b) for a in G.elements() for b in G.elements())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
