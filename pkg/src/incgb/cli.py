"""Command-line driver: ``incgb {gb,reduce,member,expand,verify,wpo} FILE``.

Exit codes: 0 success or true, 1 invalid input, 2 budget exhausted,
3 verification or membership false.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from pathlib import Path
from typing import Optional

from . import io as pio
from .algebra import DomainMismatchError, Ring
from .engine import Basis, EngineConfig, EngineError, GBResult, equivariant_buchberger, extract_elimination, reduce
from .finite import TruncatedRing, orbit_expand, same_ideal
from .orders import OrderSpec
from .symmetry import IncompleteWitnessError
from .wpo import (
    LabelError,
    LabelledTree,
    PosetTable,
    dickson_leq,
    higman_leq,
    kruskal_leq,
    multiset_leq,
    pi_divides,
)

OK, INVALID, EXHAUSTED, FALSE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _read_json(path: str):
    text = pio.resolve(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise pio.ProblemError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _parse_field_flag(val: str) -> dict:
    if val in ("rational", "QQ"):
        return {"kind": "rational"}
    p = val.split(":", 1)[1] if val.startswith("prime:") else val
    try:
        return {"kind": "prime", "p": int(p)}
    except ValueError:
        raise UsageError(f"--field: expected 'rational', 'prime:P' or a prime, got {val!r}") from None


def _parse_order_flag(val: str):
    if val.lstrip().startswith("{"):
        try:
            return json.loads(val)
        except json.JSONDecodeError as e:
            raise UsageError(f"--order: {e.msg}") from None
    return val


def load_problem(args) -> pio.ProblemFile:
    """Read the input file and apply command-line overrides."""
    doc = _read_json(args.input)
    if not isinstance(doc, dict):
        raise pio.ProblemError("top level: expected an object")
    if getattr(args, "order", None):
        doc["order"] = _parse_order_flag(args.order)
    if getattr(args, "field", None):
        doc["field"] = _parse_field_flag(args.field)
    cfg = dict(doc.get("config") or {})
    for flag in ("max_steps", "max_width", "max_degree"):
        v = getattr(args, flag, None)
        if v is not None:
            cfg[flag] = v
    if getattr(args, "no_product_criterion", False):
        cfg["use_product_criterion"] = False
    doc["config"] = cfg
    if getattr(args, "target", None):
        try:
            doc["target"] = json.loads(args.target)
        except json.JSONDecodeError as e:
            raise UsageError(f"--target: {e.msg}") from None
    return pio.problem_from_dict(doc)


def _run(pf: pio.ProblemFile) -> GBResult:
    return equivariant_buchberger(pf.generators, pf.order_spec(), pf.config, ring=pf.ring)


def _basis_for(pf: pio.ProblemFile) -> tuple[Basis, bool]:
    """The basis given in the file, or a computed one; flag is completeness."""
    order = pf.order_spec()
    if pf.basis is not None:
        return Basis(pf.basis, order, pf.ring), True
    res = _run(pf)
    return res.basis, res.complete


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gb(args) -> int:
    pf = load_problem(args)
    res = _run(pf)
    elim = None
    if args.keep:
        elim = extract_elimination(res.basis, args.keep.split(","))
    _emit(args, pio.dump_document(pio.result_document(res, args.pretty, elim)))
    return OK if res.complete else EXHAUSTED


def _reduce_doc(pf: pio.ProblemFile, pretty: bool) -> tuple[dict, bool, bool]:
    if pf.target is None:
        raise pio.ProblemError("target: required for this command")
    B, complete = _basis_for(pf)
    r, cert = reduce(pf.target, B)
    order = B.order
    doc = {
        "status": "complete" if complete else "budget-exhausted",
        "target": pio.format_polynomial(pf.target, order, pretty),
        "remainder": pio.format_polynomial(r, order, pretty),
        "remainder_terms": pio.polynomial_to_terms(r, order),
        "certificate": [
            {
                "basis_index": s.index,
                "witness": {str(k): v for k, v in s.witness.to_dict().items()},
                "multiplier": pio.monomial_to_factors(s.multiplier),
                "coefficient": str(s.coefficient),
            }
            for s in cert
        ],
        "basis": pio.basis_document(B, pretty),
    }
    return doc, not r, complete


def cmd_reduce(args) -> int:
    doc, _, complete = _reduce_doc(load_problem(args), args.pretty)
    _emit(args, pio.dump_document(doc))
    return OK if complete else EXHAUSTED


def cmd_member(args) -> int:
    pf = load_problem(args)
    doc, zero, complete = _reduce_doc(pf, args.pretty)
    if not complete and not zero:
        # an incomplete basis cannot certify non-membership
        _emit(args, "unknown\n")
        return EXHAUSTED
    _emit(args, "true\n" if zero else "false\n")
    return OK if zero else FALSE


def cmd_expand(args) -> int:
    pf = load_problem(args)
    src = pf.basis if pf.basis is not None else pf.generators
    polys = orbit_expand(src, args.width)
    order = pf.order_spec()
    doc = {
        "width": args.width,
        "count": len(polys),
        "polynomials": [
            {"text": pio.format_polynomial(g, order, args.pretty), "terms": pio.polynomial_to_terms(g, order)}
            for g in polys
        ],
    }
    _emit(args, pio.dump_document(doc))
    return OK


def cmd_verify(args) -> int:
    pf = load_problem(args)
    B, complete = _basis_for(pf)
    if not complete:
        _emit(args, "unknown\n")
        return EXHAUSTED
    tr = TruncatedRing(pf.ring, args.width)
    ok = same_ideal(
        orbit_expand(B.elements, args.width, drop_wider=True),
        orbit_expand(pf.generators, args.width, drop_wider=True),
        tr,
        B.order,
    )
    _emit(args, "true\n" if ok else "false\n")
    return OK if ok else FALSE


# ---------------------------------------------------------------------------
# wpo
# ---------------------------------------------------------------------------


def parse_poset(obj, path: str = "poset") -> PosetTable:
    if not isinstance(obj, dict):
        raise pio.ProblemError(f"{path}: expected an object")
    try:
        if "leq" in obj:
            return PosetTable(obj["leq"])
        if "chain" in obj:
            return PosetTable.chain(int(obj["chain"]))
        if "antichain" in obj:
            return PosetTable.antichain(int(obj["antichain"]))
        if "relations" in obj:
            return PosetTable.from_relations(int(obj["size"]), [tuple(r) for r in obj["relations"]])
    except (KeyError, TypeError, ValueError) as e:
        raise pio.ProblemError(f"{path}: {e}") from None
    raise pio.ProblemError(f"{path}: expected one of 'leq', 'chain', 'antichain', 'relations'")


def _tree(obj, path: str) -> LabelledTree:
    try:
        return LabelledTree.from_obj(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise pio.ProblemError(f"{path}: malformed tree ({e})") from None


def _int_seq(obj, path: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in obj):
        raise pio.ProblemError(f"{path}: expected a list of integers")
    return obj


def cmd_wpo(args) -> int:
    doc = _read_json(args.input)
    left = pio._req(doc, "left", "top level")
    right = pio._req(doc, "right", "top level")
    witness = None
    if args.relation == "dickson":
        a, b = _int_seq(left, "left"), _int_seq(right, "right")
        if len(a) != len(b):
            raise pio.ProblemError("right: length differs from left")
        if any(x < 0 for x in a + b):
            raise pio.ProblemError("left/right: exponents must be non-negative")
        result = dickson_leq(a, b)
    elif args.relation == "pidivides":
        ring = Ring(pio.parse_ring(pio._req(doc, "ring", "top level")))
        u = pio.parse_monomial(left, ring, "left")
        v = pio.parse_monomial(right, ring, "right")
        w = pi_divides(u, v)
        result = w is not None
        if w is not None:
            witness = w
    else:
        poset = parse_poset(pio._req(doc, "poset", "top level"))
        if args.relation == "multiset":
            result = multiset_leq(Counter(_int_seq(left, "left")), Counter(_int_seq(right, "right")), poset)
        elif args.relation == "higman":
            result = higman_leq(_int_seq(left, "left"), _int_seq(right, "right"), poset)
        else:
            result = kruskal_leq(_tree(left, "left"), _tree(right, "right"), poset)
    out = "true\n" if result else "false\n"
    if witness is not None:
        out += f"witness {witness}\n"
    _emit(args, out)
    return OK if result else FALSE


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="incgb", description="Gröbner bases up to Inc(N) symmetry.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log engine progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="problem file, or the name of a bundled problem")
    common.add_argument("--order", help="preset name or a JSON order object")
    common.add_argument("--field", help="'rational' or 'prime:P'")
    common.add_argument("--max-steps", type=int, dest="max_steps")
    common.add_argument("--max-width", type=int, dest="max_width")
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--no-product-criterion", action="store_true", dest="no_product_criterion")
    common.add_argument("--pretty", action="store_true", help="render variables as y43 instead of y[4,3]")
    common.add_argument("--output", help="write to this path instead of stdout")

    p = sub.add_parser("gb", parents=[common], help="compute an equivariant Gröbner basis")
    p.add_argument("--keep", help="comma-separated symbols; also report the elimination part")
    p.set_defaults(func=cmd_gb)

    for name, func, text in (
        ("reduce", cmd_reduce, "reduce the target modulo the basis orbits"),
        ("member", cmd_member, "decide whether the target lies in the ideal"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--target", help="JSON term list overriding the file's target")
        p.set_defaults(func=func)

    p = sub.add_parser("expand", parents=[common], help="orbit images supported in [width]")
    p.add_argument("--width", type=int, required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="check truncation consistency at a width")
    p.add_argument("--width", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("wpo", help="decide one of the order relations")
    p.add_argument("relation", choices=["dickson", "multiset", "higman", "kruskal", "pidivides"])
    p.add_argument("input")
    p.add_argument("--output")
    p.set_defaults(func=cmd_wpo)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return INVALID if e.code else OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "width", None) is not None and args.width < 0:
        print("error: --width must be non-negative", file=sys.stderr)
        return INVALID
    try:
        return args.func(args)
    except (
        pio.ProblemError,
        UsageError,
        FileNotFoundError,
        DomainMismatchError,
        EngineError,
        LabelError,
        IncompleteWitnessError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
