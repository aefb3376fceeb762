"""Command-line front end.

Every command reads one JSON request object from FILE (or stdin) and writes a
report.  Exit status: 0 on success, 1 when a violation or obstruction was
found, 2 for usage, schema or representation errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from .amalgam import (bijection_roundtrip, build_lifted_amalgam, check_compatibility, check_extends_factors,
                      derive_circular_on_amalgam)
from .catalog import klein_left_on_lifted_amalgam
from .descriptors import SchemaError, parse_amalgam, parse_cocycle, parse_group, parse_left, parse_ordering
from .errors import CircOrderError
from .extensions import (cocycle_from_circular, cocycle_from_leftorder, coboundary_witness, lift_group,
                         quotient_group, roundtrip_eta, roundtrip_nu)
from .freeproduct import base_circular, minimal_reduction
from .groups import FreeProduct
from .orders import enumerate_circular_orderings, validate_circular, validate_left
from .serialization import decode_element, to_jsonable

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _list(req: dict, key: str) -> list:
    v = req.get(key, [])
    if not isinstance(v, list):
        raise SchemaError(f"'{key}' must be an array")
    return v


def _triples(group, req: dict, key: str = "triples") -> list:
    out = []
    for t in _list(req, key):
        if not (isinstance(t, list) and len(t) == 3):
            raise SchemaError("triples are arrays of three elements")
        out.append(tuple(decode_element(group, x) for x in t))
    return out


def _report_exit(report) -> int:
    return EXIT_OK if report.status in ("pass", "inapplicable") else EXIT_VIOLATION


def cmd_eval_circ(req, args):
    G = parse_group(req.get("group"))
    co = parse_ordering(G, req.get("ordering"))
    ts = _triples(G, req)
    return {"values": [co(*t) for t in ts], "triples": ts}, EXIT_OK


def cmd_eval_left(req, args):
    G = parse_group(req.get("group"))
    lo = parse_left(G, req.get("left"))
    results = []
    for x in _list(req, "elements"):
        g = decode_element(G, x)
        results.append({"element": g, "sign": lo.sign(g), "floor": lo.floor(g)})
    return {"z": lo.z, "results": results}, EXIT_OK


def _sampling(args) -> dict:
    return {"sample": args.samples, "seed": args.seed} if args.seed is not None else {}


def cmd_validate(req, args):
    G = parse_group(req.get("group"))
    if "left" in req:
        report = validate_left(parse_left(G, req["left"]), args.window)
    else:
        report = validate_circular(parse_ordering(G, req.get("ordering")), args.window, **_sampling(args))
    return {"report": report}, _report_exit(report)


def cmd_lift(req, args):
    G = parse_group(req.get("group"))
    co = parse_ordering(G, req.get("ordering"))
    lo = lift_group(co)
    E = lo.group
    f = cocycle_from_circular(co)
    els = G.sample(args.window)
    products = []
    for pair in _list(req, "products"):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise SchemaError("products are pairs of lift elements [[n, a], [m, b]]")
        x, y = decode_element(E, pair[0]), decode_element(E, pair[1])
        products.append({"left": x, "right": y, "product": E.mul(x, y)})
    report = validate_left(lo, min(args.window, 2))
    payload = {
        "z": lo.z,
        "cocycle": [[a, b, f(a, b)] for a in els for b in els],
        "products": products,
        "report": report,
    }
    return payload, _report_exit(report)


def cmd_quotient(req, args):
    G = parse_group(req.get("group"))
    lo = parse_left(G, req.get("left"))
    qc = quotient_group(lo)
    f = cocycle_from_leftorder(lo)
    reps = [{"element": decode_element(G, x), "minimal_representative": lo.minrep(decode_element(G, x))}
            for x in _list(req, "elements")]
    pairs = []
    for p in _list(req, "pairs"):
        if not (isinstance(p, list) and len(p) == 2):
            raise SchemaError("pairs are arrays of two elements")
        a, b = decode_element(G, p[0]), decode_element(G, p[1])
        pairs.append([a, b, f(a, b)])
    ts = _triples(G, req)
    return {"minimal_representatives": reps, "values": [qc(*t) for t in ts], "triples": ts,
            "cocycle": pairs}, EXIT_OK


def cmd_roundtrip(req, args):
    G = parse_group(req.get("group"))
    if "left" in req:
        report = roundtrip_nu(parse_left(G, req["left"]), args.window)
        which = "nu"
    else:
        report = roundtrip_eta(parse_ordering(G, req.get("ordering")), args.window)
        which = "eta"
    return {"map": which, "report": report}, _report_exit(report)


def cmd_enumerate(req, args):
    G = parse_group(req.get("group"))
    found = enumerate_circular_orderings(G, guard=args.bound)
    arrangements = [list(getattr(o, "arrangement", G.elements())) for o in found]
    return {"count": len(found), "arrangements": arrangements}, EXIT_OK


def _free_product(req) -> FreeProduct:
    G = parse_group(req.get("group"))
    if not isinstance(G, FreeProduct):
        raise SchemaError("this command needs a free_product group")
    return G


def _one_triple(G, req):
    t = req.get("triple")
    if not (isinstance(t, list) and len(t) == 3):
        raise SchemaError("'triple' must be an array of three words")
    return tuple(decode_element(G, w) for w in t)


def cmd_reduce_triple(req, args):
    G = _free_product(req)
    if len(G.factors) != 2:
        raise SchemaError("reduction is defined for two factors")
    t = _one_triple(G, req)
    final, trace = minimal_reduction(t, G)
    return {"triple": t, "final": final, "trace": trace}, EXIT_OK


def cmd_fp_eval(req, args):
    G = _free_product(req)
    co = parse_ordering(G, req.get("ordering"))
    t = _one_triple(G, req)
    payload: dict[str, Any] = {"triple": t, "value": co(*t)}
    if len(G.factors) == 2:
        final, trace = minimal_reduction(t, G)
        factor_orderings = [parse_ordering(g, o) for g, o in zip(G.factors, req["ordering"]["factors"])]
        payload.update(final=final, trace=trace, base_value=base_circular(final, factor_orderings))
    return payload, EXIT_OK


def cmd_compat_check(req, args):
    desc = parse_amalgam(req.get("amalgam"))
    report = check_compatibility(desc, args.window)
    return {"report": report}, _report_exit(report)


def cmd_amalgam_derive(req, args):
    desc = parse_amalgam(req.get("amalgam"))
    left = req.get("left", {"kind": "klein_pullback"})
    if left.get("kind") != "klein_pullback":
        raise SchemaError("the only supplied left ordering is 'klein_pullback'")
    la = build_lifted_amalgam(desc, args.window)
    lo = klein_left_on_lifted_amalgam(la)
    c = derive_circular_on_amalgam(la, lo, args.window)
    A = desc.group
    ts = _triples(A, req)
    words = A.words(args.window, 2)
    reports = {
        "extends_factors": check_extends_factors(desc, c, args.window),
        "axioms": validate_circular(c, elements=words),
        "bijection": bijection_roundtrip(la, lo, args.window),
    }
    status = EXIT_OK if all(r.ok for r in reports.values()) else EXIT_VIOLATION
    return {"values": [c(*t) for t in ts], "triples": ts, "reports": reports}, status


def cmd_coboundary(req, args):
    G = parse_group(req.get("group"))
    f = parse_cocycle(G, req.get("cocycle"))
    d = coboundary_witness(f, guard=args.bound)
    if d is None:
        return {"witness": None}, EXIT_VIOLATION
    return {"witness": [[g, v] for g, v in d.items()]}, EXIT_OK


COMMANDS: dict[str, Callable] = {
    "eval-circ": cmd_eval_circ,
    "eval-left": cmd_eval_left,
    "validate": cmd_validate,
    "lift": cmd_lift,
    "quotient": cmd_quotient,
    "roundtrip": cmd_roundtrip,
    "enumerate": cmd_enumerate,
    "reduce-triple": cmd_reduce_triple,
    "fp-eval": cmd_fp_eval,
    "compat-check": cmd_compat_check,
    "amalgam-derive": cmd_amalgam_derive,
    "coboundary": cmd_coboundary,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="circorder", description="Circularly and left ordered groups.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("file", nargs="?", default="-", help="JSON request (default: stdin)")
    p.add_argument("--window", type=_positive, default=3, help="window bound for checks on infinite groups")
    p.add_argument("--bound", type=_positive, default=12, help="size guard for enumeration and solving")
    p.add_argument("--seed", type=int, default=None, help="switch validation to seeded random sampling")
    p.add_argument("--samples", type=_positive, default=2000, help="samples drawn when --seed is given")
    p.add_argument("--json", action="store_true", help="emit JSON (default: key/value text)")
    return p


def render(payload: dict, as_json: bool) -> str:
    data = to_jsonable(payload)
    if as_json:
        return json.dumps(data, sort_keys=True, separators=(",", ":"))
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict) and "status" in value:
            lines.append(f"{key}: {value['status']}")
            for v in value.get("violations", [])[:3]:
                lines.append(f"  {v.get('kind')}: {json.dumps(v.get('witness'))}")
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        req = json.loads(text)
        if not isinstance(req, dict):
            raise SchemaError("the request must be a JSON object")
        payload, code = COMMANDS[args.command](req, args)
    except (OSError, json.JSONDecodeError, SchemaError, CircOrderError, ValueError, TypeError, KeyError) as exc:
        payload, code = {"error": f"{type(exc).__name__}: {exc}"}, EXIT_USAGE
    payload["exit_code"] = code
    print(render(payload, args.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
