"""Problem files (JSON) and output documents.

A problem file looks like::

    {
      "ring": [{"name": "x", "fixed": [], "free_arity": 1, "constraint": "none"},
               {"name": "y", "fixed": [], "free_arity": 2, "constraint": "decreasing"}],
      "field": {"kind": "rational"},
      "order": "elim-onefactor",
      "generators": [
        [{"coefficient": "1", "factors": [{"symbol": "y", "fixed": [], "free": [2, 1], "exponent": 1}]},
         {"coefficient": "-1", "factors": [{"symbol": "x", "fixed": [], "free": [2], "exponent": 1},
                                           {"symbol": "x", "fixed": [], "free": [1], "exponent": 1}]}]
      ],
      "config": {"max_steps": null}
    }

Optional keys: ``basis`` (a list of polynomials used instead of computing
one) and ``target`` (a polynomial, for ``reduce`` and ``member``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .algebra import Field, Monomial, Polynomial, Ring, SymbolSchema, Variable
from .engine import Basis, EngineConfig, GBResult
from .orders import PRESETS, OrderSpec, preset

DATA_DIR = Path(__file__).with_name("data")


class ProblemError(ValueError):
    """Invalid problem file; the message names the offending field."""


@dataclass
class ProblemFile:
    ring: Ring
    order: Union[str, OrderSpec]
    generators: list[Polynomial]
    config: EngineConfig = field(default_factory=EngineConfig)
    basis: Optional[list[Polynomial]] = None
    target: Optional[Polynomial] = None

    def order_spec(self) -> OrderSpec:
        if isinstance(self.order, OrderSpec):
            return self.order
        return preset(self.order, self.ring)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _req(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise ProblemError(f"{path}: expected an object")
    if key not in obj:
        raise ProblemError(f"{path}: missing field {key!r}")
    return obj[key]


def _int_list(val, path: str) -> tuple[int, ...]:
    if not isinstance(val, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in val):
        raise ProblemError(f"{path}: expected a list of integers")
    return tuple(val)


def parse_ring(decls, path: str = "ring") -> tuple[SymbolSchema, ...]:
    if not isinstance(decls, list) or not decls:
        raise ProblemError(f"{path}: expected a non-empty list of symbol declarations")
    out = []
    for i, d in enumerate(decls):
        p = f"{path}[{i}]"
        try:
            out.append(
                SymbolSchema(
                    name=_req(d, "name", p),
                    fixed_bounds=_int_list(d.get("fixed", []), f"{p}.fixed"),
                    free_arity=d.get("free_arity", 1),
                    constraint=d.get("constraint", "none"),
                )
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ProblemError):
                raise
            raise ProblemError(f"{p}: {e}") from None
    return tuple(out)


def parse_field(obj, path: str = "field") -> Field:
    if obj is None:
        return Field()
    if isinstance(obj, str):
        obj = {"kind": obj}
    kind = _req(obj, "kind", path)
    if kind == "rational":
        return Field()
    if kind == "prime":
        p = _req(obj, "p", path)
        try:
            return Field(int(p))
        except ValueError as e:
            raise ProblemError(f"{path}.p: {e}") from None
    raise ProblemError(f"{path}.kind: expected 'rational' or 'prime', got {kind!r}")


def parse_order(obj, path: str = "order") -> Union[str, OrderSpec]:
    if isinstance(obj, str):
        if obj not in PRESETS:
            raise ProblemError(f"{path}: unknown preset {obj!r}; expected one of {list(PRESETS)}")
        return obj
    prec = _req(obj, "precedence", path)
    if not isinstance(prec, list) or not all(isinstance(s, str) for s in prec):
        raise ProblemError(f"{path}.precedence: expected a list of symbol names")
    grading = obj.get("grading", "none")
    if grading not in ("none", "degree"):
        raise ProblemError(f"{path}.grading: expected 'none' or 'degree'")
    free = obj.get("free_indices", "ascending")
    if free not in ("ascending", "descending"):
        raise ProblemError(f"{path}.free_indices: expected 'ascending' or 'descending'")
    try:
        return OrderSpec(tuple(prec), graded=grading == "degree", free_descending=free == "descending")
    except ValueError as e:
        raise ProblemError(f"{path}: {e}") from None


def parse_monomial(factors, ring: Ring, path: str) -> Monomial:
    if not isinstance(factors, list):
        raise ProblemError(f"{path}: expected a list of factors")
    acc = []
    for i, fct in enumerate(factors):
        p = f"{path}[{i}]"
        sym = _req(fct, "symbol", p)
        fixed = _int_list(fct.get("fixed", []), f"{p}.fixed")
        free = _int_list(fct.get("free", []), f"{p}.free")
        exp = fct.get("exponent", 1)
        if not isinstance(exp, int) or exp < 1:
            raise ProblemError(f"{p}.exponent: expected a positive integer")
        try:
            ring.schema(sym).check(fixed, free)
        except KeyError:
            raise ProblemError(f"{p}.symbol: unknown symbol {sym!r}") from None
        except ValueError as e:
            raise ProblemError(f"{p}: {e}") from None
        acc.append((Variable(sym, fixed, free), exp))
    return Monomial(acc)


def parse_coefficient(val, path: str) -> Fraction:
    if isinstance(val, bool) or not isinstance(val, (str, int)):
        raise ProblemError(f"{path}: expected an integer or a fraction string like '-3/4'")
    try:
        return Fraction(val)
    except (ValueError, ZeroDivisionError):
        raise ProblemError(f"{path}: cannot parse coefficient {val!r}") from None


def parse_polynomial(terms, ring: Ring, path: str) -> Polynomial:
    if not isinstance(terms, list):
        raise ProblemError(f"{path}: expected a list of terms")
    acc: dict[Monomial, Any] = {}
    for i, t in enumerate(terms):
        p = f"{path}[{i}]"
        c = parse_coefficient(_req(t, "coefficient", p), f"{p}.coefficient")
        m = parse_monomial(_req(t, "factors", p), ring, f"{p}.factors")
        acc[m] = acc.get(m, 0) + c
    return Polynomial(ring, acc)


def parse_config(obj, path: str = "config") -> EngineConfig:
    if obj is None:
        return EngineConfig()
    if not isinstance(obj, dict):
        raise ProblemError(f"{path}: expected an object")
    known = {"max_steps", "max_width", "max_degree", "use_product_criterion"}
    extra = set(obj) - known
    if extra:
        raise ProblemError(f"{path}: unknown fields {sorted(extra)}")
    for k in ("max_steps", "max_width", "max_degree"):
        v = obj.get(k)
        if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 1):
            raise ProblemError(f"{path}.{k}: expected a positive integer or null")
    upc = obj.get("use_product_criterion", True)
    if not isinstance(upc, bool):
        raise ProblemError(f"{path}.use_product_criterion: expected a boolean")
    return EngineConfig(obj.get("max_steps"), obj.get("max_width"), obj.get("max_degree"), upc)


def problem_from_dict(doc: dict) -> ProblemFile:
    if not isinstance(doc, dict):
        raise ProblemError("top level: expected an object")
    ring = Ring(parse_ring(_req(doc, "ring", "top level")), parse_field(doc.get("field")))
    order = parse_order(doc.get("order", "rowlex"))
    try:
        spec = order if isinstance(order, OrderSpec) else preset(order, ring)
        for name in ring.names:
            spec.variable_key(Variable(name, (), ()))
    except ValueError as e:
        raise ProblemError(f"order: {e}") from None
    gens_raw = doc.get("generators", [])
    if not isinstance(gens_raw, list):
        raise ProblemError("generators: expected a list of polynomials")
    gens = []
    for i, g in enumerate(gens_raw):
        f = parse_polynomial(g, ring, f"generators[{i}]")
        if not f:
            raise ProblemError(f"generators[{i}]: zero generator")
        gens.append(f)
    basis = None
    if doc.get("basis") is not None:
        basis = []
        for i, g in enumerate(doc["basis"]):
            f = parse_polynomial(g, ring, f"basis[{i}]")
            if not f:
                raise ProblemError(f"basis[{i}]: zero polynomial")
            basis.append(f)
    target = None
    if doc.get("target") is not None:
        target = parse_polynomial(doc["target"], ring, "target")
    return ProblemFile(ring, order, gens, parse_config(doc.get("config")), basis, target)


def loads(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return problem_from_dict(doc)


def resolve(path: Union[str, Path]) -> Path:
    """A path, or the name of a bundled problem such as ``onefactor``."""
    p = Path(path)
    if p.exists():
        return p
    for cand in (DATA_DIR / str(path), DATA_DIR / f"{path}.json"):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"no such problem file: {path}")


def load(path: Union[str, Path]) -> ProblemFile:
    return loads(resolve(path).read_text())


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def coefficient_to_str(c) -> str:
    return str(c)


def monomial_to_factors(m: Monomial) -> list[dict]:
    return [
        {"symbol": v.symbol, "fixed": list(v.fixed), "free": list(v.free), "exponent": e} for v, e in m.terms
    ]


def polynomial_to_terms(f: Polynomial, order: Optional[OrderSpec] = None) -> list[dict]:
    items = order.sorted_terms(f) if order else sorted(f.terms.items(), key=lambda t: t[0].terms)
    return [{"coefficient": coefficient_to_str(c), "factors": monomial_to_factors(m)} for m, c in items]


def ring_to_list(ring: Ring) -> list[dict]:
    return [
        {"name": s.name, "fixed": list(s.fixed_bounds), "free_arity": s.free_arity, "constraint": s.constraint}
        for s in ring.schemas
    ]


def field_to_dict(f: Field) -> dict:
    return {"kind": "rational"} if f.is_rational else {"kind": "prime", "p": f.p}


def problem_to_dict(pf: ProblemFile) -> dict:
    doc = {
        "ring": ring_to_list(pf.ring),
        "field": field_to_dict(pf.ring.field),
        "order": pf.order if isinstance(pf.order, str) else pf.order.to_dict(),
        "generators": [polynomial_to_terms(g) for g in pf.generators],
        "config": pf.config.to_dict(),
    }
    if pf.basis is not None:
        doc["basis"] = [polynomial_to_terms(g) for g in pf.basis]
    if pf.target is not None:
        doc["target"] = polynomial_to_terms(pf.target)
    return doc


def dumps(pf: ProblemFile) -> str:
    return json.dumps(problem_to_dict(pf), indent=2) + "\n"


def format_polynomial(f: Polynomial, order: OrderSpec, pretty: bool = False) -> str:
    """Terms descending in ``order``; variables inside a monomial too."""
    if not f.terms:
        return "0"
    parts = []
    for i, (m, c) in enumerate(order.sorted_terms(f)):
        vs = sorted(m.terms, key=lambda t: order.variable_key(t[0]), reverse=True)
        name = (lambda v: v.pretty()) if pretty else str
        ms = "*".join(name(v) if e == 1 else f"{name(v)}^{e}" for v, e in vs)
        cs = str(c)
        neg = cs.startswith("-")
        cs = cs.lstrip("-")
        if not ms:
            body = cs
        elif cs == "1":
            body = ms
        else:
            body = f"{cs}*{ms}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def basis_document(basis: Basis, pretty: bool = False) -> list[dict]:
    return [
        {"text": format_polynomial(g, basis.order, pretty), "terms": polynomial_to_terms(g, basis.order)}
        for g in basis.elements
    ]


def result_document(res: GBResult, pretty: bool = False, elimination: Optional[Basis] = None) -> dict:
    doc = {
        "status": res.status,
        "order": res.basis.order.to_dict(),
        "basis": basis_document(res.basis, pretty),
        "stats": res.stats.to_dict(),
    }
    if elimination is not None:
        doc["elimination"] = basis_document(elimination, pretty)
    return doc


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def with_overrides(pf: ProblemFile, **kw) -> ProblemFile:
    return replace(pf, **kw)
