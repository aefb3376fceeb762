import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from circorder import cli
from circorder.catalog import doubled_z4_descriptor
from circorder.errors import RepresentationError
from circorder.groups import (CircleRationals, CyclicGroup, DirectProduct, FreeProduct, Integers, Rationals,
                              SemidirectZ)
from circorder.report import ValidationReport
from circorder.serialization import decode_element, to_jsonable


def wire(group, g):
    return decode_element(group, json.loads(json.dumps(to_jsonable(g))))


@given(st.fractions())
def test_rational_round_trip(q):
    assert wire(Rationals(), q) == q


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_pair_round_trip(m, n):
    assert wire(SemidirectZ(0), (m, n)) == (m, n)
    assert wire(DirectProduct(Integers(), Integers()), (m, n)) == (m, n)


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), max_size=5))
def test_free_product_round_trip(syllables):
    F = FreeProduct([Integers(), Integers()])
    w = F.normalize(syllables)
    assert wire(F, w) == w


def test_amalgam_word_round_trip():
    A = doubled_z4_descriptor().group
    for w in A.words(3, 2):
        assert wire(A, w) == w


def test_fractions_encode_exactly():
    assert to_jsonable(Fraction(2, 5)) == [2, 5]
    with pytest.raises(TypeError):
        to_jsonable(0.5)


@pytest.mark.parametrize("group,data", [
    (CyclicGroup(5), 5), (CyclicGroup(5), True), (CircleRationals(), [6, 5]), (Rationals(), [1, 0]),
    (Integers(), 1.5), (SemidirectZ(2), [0, 2]),
])
def test_bad_elements_are_rejected(group, data):
    with pytest.raises(RepresentationError):
        decode_element(group, data)


def test_report_json_is_sorted_and_exact():
    rep = ValidationReport("fail", {"b": 1, "a": 2}, [{"kind": "x", "witness": (Fraction(1, 2),)}])
    assert rep.to_json() == json.dumps(json.loads(rep.to_json()), sort_keys=True)
    assert json.loads(rep.to_json())["violations"][0]["witness"] == [[1, 2]]


# command line


def run(capsys, command, request, *flags, tmp_path=None):
    path = tmp_path / "request.json"
    path.write_text(request if isinstance(request, str) else json.dumps(request))
    code = cli.main([command, str(path), "--json", *flags])
    out = capsys.readouterr().out
    return code, json.loads(out), out


Z5_STD = {"group": {"kind": "cyclic", "n": 5}, "ordering": {"kind": "std_circle"}}
FREE = {"kind": "free_product", "factors": [{"kind": "integers"}, {"kind": "integers"}]}


def test_validate_cyclic(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", Z5_STD, tmp_path=tmp_path)
    assert code == 0 and out["report"]["status"] == "pass"


def test_validate_seeded_is_byte_identical(capsys, tmp_path):
    _, _, first = run(capsys, "validate", Z5_STD, "--seed", "3", tmp_path=tmp_path)
    _, _, second = run(capsys, "validate", Z5_STD, "--seed", "3", tmp_path=tmp_path)
    assert first == second
    assert json.loads(first)["report"]["checked_region"]["seed"] == 3


def test_validate_violation_reverifies(capsys, tmp_path):
    req = {"group": {"kind": "cyclic", "n": 5}, "ordering": {"kind": "table", "entries": [0, 1, 3, 2, 4]}}
    code, out, _ = run(capsys, "validate", req, tmp_path=tmp_path)
    assert code == 1
    v = out["report"]["violations"][0]
    assert v["kind"] == "invariance"
    g, t = v["witness"]
    shifted = [(g + x) % 5 for x in t]
    code, values, _ = run(capsys, "eval-circ", dict(req, triples=[t, shifted]), tmp_path=tmp_path)
    assert code == 0 and values["values"][0] != values["values"][1]


def test_reduce_triple(capsys, tmp_path):
    req = {"group": FREE, "triple": [[[0, 1], [1, 1]], [[0, 1]], [[1, 1]]]}
    code, out, _ = run(capsys, "reduce-triple", req, tmp_path=tmp_path)
    assert code == 0
    assert out["final"] == [[[1, 1]], [], [[0, -1]]]
    assert [s["move"] for s in out["trace"]] == [2, 3]


def test_fp_eval(capsys, tmp_path):
    req = {"group": FREE, "ordering": {"kind": "free_product", "factors": [{"kind": "linear"}, {"kind": "linear"}]},
           "triple": [[[0, 1], [1, 1]], [[0, 1]], [[1, 1]]]}
    code, out, _ = run(capsys, "fp-eval", req, tmp_path=tmp_path)
    assert code == 0 and out["value"] == 1 == out["base_value"]


def test_lift_and_quotient(capsys, tmp_path):
    req = {"group": {"kind": "cyclic", "n": 3}, "ordering": {"kind": "std_circle"}, "products": [[[0, 1], [0, 2]]]}
    code, out, _ = run(capsys, "lift", req, tmp_path=tmp_path)
    assert code == 0 and out["products"][0]["product"] == [1, 0] and out["z"] == [1, 0]
    req = {"group": {"kind": "integers"}, "left": {"kind": "std", "z": 5}, "elements": [7], "pairs": [[3, 4]]}
    code, out, _ = run(capsys, "quotient", req, tmp_path=tmp_path)
    assert out["minimal_representatives"][0]["minimal_representative"] == 2
    assert out["cocycle"] == [[3, 4, 1]]


def test_eval_left_and_roundtrip(capsys, tmp_path):
    req = {"group": {"kind": "klein_bottle"}, "left": {"kind": "klein_lex"}, "elements": [[0, 3]]}
    code, out, _ = run(capsys, "eval-left", req, tmp_path=tmp_path)
    assert code == 0 and out["results"][0] == {"element": [0, 3], "floor": 1, "sign": 1}
    code, out, _ = run(capsys, "roundtrip", req, "--window", "2", tmp_path=tmp_path)
    assert code == 0 and out["map"] == "nu"


def test_enumerate_and_coboundary(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", {"group": {"kind": "cyclic", "n": 5}}, tmp_path=tmp_path)
    assert code == 0 and out["count"] == 4
    req = {"group": {"kind": "cyclic", "n": 3}, "cocycle": {"kind": "from_ordering", "ordering": {"kind": "std_circle"}}}
    code, out, _ = run(capsys, "coboundary", req, tmp_path=tmp_path)
    assert code == 1 and out["witness"] is None
    req["cocycle"] = {"kind": "zero"}
    code, out, _ = run(capsys, "coboundary", req, tmp_path=tmp_path)
    assert code == 0 and all(v == 0 for _, v in out["witness"])


def test_amalgam_derive(capsys, tmp_path):
    z4 = {"group": {"kind": "cyclic", "n": 4}, "ordering": {"kind": "std_circle"},
          "phi": {"kind": "generator", "image": 2}, "transversal": [0, 1]}
    req = {"amalgam": {"core": {"group": {"kind": "cyclic", "n": 2}, "ordering": {"kind": "std_circle"}},
                       "factors": [z4, z4]},
           "triples": [[{"core": 0, "reps": [[0, 1]]}, {"core": 0, "reps": [[1, 1]]}, {"core": 1, "reps": []}]]}
    code, out, _ = run(capsys, "amalgam-derive", req, "--window", "2", tmp_path=tmp_path)
    assert code == 0
    assert out["values"] == [1]
    assert all(r["status"] == "pass" for r in out["reports"].values())


@pytest.mark.parametrize("request_text", [
    "not json", "[1, 2]", json.dumps({"group": {"kind": "nope"}}),
    json.dumps({"group": {"kind": "cyclic", "n": 5}, "ordering": {"kind": "std_circle"}, "triples": [[0, 1, 9]]}),
    json.dumps({"group": {"kind": "cyclic", "n": 0}, "ordering": {"kind": "std_circle"}}),
])
def test_schema_errors_exit_two(capsys, tmp_path, request_text):
    code, out, _ = run(capsys, "eval-circ", request_text, tmp_path=tmp_path)
    assert code == 2 and "error" in out


def test_bad_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["validate", "--window", "0"])
    assert exc.value.code == 2


def test_stdin_and_text_output(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(Z5_STD)))
    assert cli.main(["validate"]) == 0
    assert "report: pass" in capsys.readouterr().out
