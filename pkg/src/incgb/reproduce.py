"""Reproduce the worked examples as JSON documents.

``python -m incgb.reproduce`` prints every document; two runs must print
the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as pio
from .engine import Basis, EngineConfig, GBResult, criterion_failures, equivariant_buchberger, extract_elimination, reduce
from .finite import TruncatedRing, orbit_expand, same_ideal, segre_quadrics, segre_ring, segre_substitution
from .orders import preset
from .problems import onefactor_reference_basis, random_rowlex_input

RANDOM_SEEDS = range(25)
RANDOM_CONFIG = EngineConfig(max_steps=500, max_width=10, max_degree=10)


def onefactor() -> GBResult:
    pf = pio.load("onefactor")
    return equivariant_buchberger(pf.generators, pf.order_spec(), pf.config, ring=pf.ring)


def onefactor_document(res: GBResult) -> dict:
    ref = Basis(onefactor_reference_basis(res.basis.ring), res.basis.order, res.basis.ring)
    doc = pio.result_document(res, pretty=True)
    doc["reference_reduces_to_zero"] = all(not reduce(g, res.basis)[0] for g in ref)
    doc["basis_reduces_to_zero_mod_reference"] = all(not reduce(g, ref)[0] for g in res.basis)
    doc["canonical_leading_monomials"] = sorted(m.pretty() for m in res.basis.canonical_leading_monomials())
    doc["reference_canonical_leading_monomials"] = sorted(m.pretty() for m in ref.canonical_leading_monomials())
    return doc


def elimination_document(res: GBResult) -> dict:
    elim = extract_elimination(res.basis, {"y"})
    return {"elimination": pio.basis_document(elim, pretty=True)}


def audit_document(res: GBResult) -> dict:
    bad = criterion_failures(res.basis)
    return {"failures": [{"pair": [i, j], "remainder": str(r)} for i, j, _, _, r in bad]}


def truncation_document(res: GBResult, gens) -> dict:
    order, ring = res.basis.order, res.basis.ring
    widths = {}
    for n in (2, 3, 4, 5):
        tr = TruncatedRing(ring, n)
        widths[str(n)] = same_ideal(
            orbit_expand(res.basis.elements, n, drop_wider=True), orbit_expand(gens, n), tr, order
        )
    return {"onefactor": widths, "random": random_truncation_rows()}


def random_truncation_rows(width: int = 4) -> list[dict]:
    rows = []
    for seed in RANDOM_SEEDS:
        R, gens = random_rowlex_input(seed)
        order = preset("rowlex", R)
        res = equivariant_buchberger(gens, order, RANDOM_CONFIG)
        row = {
            "seed": seed,
            "generators": [pio.format_polynomial(g, order) for g in gens],
            "status": res.status,
            "basis": [pio.format_polynomial(g, order) for g in res.basis],
        }
        if res.complete:
            tr = TruncatedRing(R, width)
            row["same_ideal"] = same_ideal(
                orbit_expand(res.basis.elements, width, drop_wider=True),
                orbit_expand(gens, width, drop_wider=True),
                tr,
                order,
            )
        rows.append(row)
    return rows


def segre_document(k: int = 2, width: int = 4) -> dict:
    R = segre_ring(k)
    quads = segre_quadrics(k, R)
    expanded = orbit_expand(quads, width)
    images = [segre_substitution(q, k) for q in expanded]
    return {
        "representatives": [str(q) for q in quads],
        "expanded": len(expanded),
        "nonzero_images": [str(q) for q, im in zip(expanded, images) if im],
    }


def all_documents() -> dict[str, str]:
    res = onefactor()
    gens = pio.load("onefactor").generators
    docs = {
        "onefactor": onefactor_document(res),
        "elimination": elimination_document(res),
        "audit": audit_document(res),
        "truncation": truncation_document(res, gens),
        "segre": segre_document(),
    }
    return {name: pio.dump_document(d) for name, d in docs.items()}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m incgb.reproduce", description=__doc__.splitlines()[0])
    ap.add_argument("--only", choices=["onefactor", "elimination", "audit", "truncation", "segre"])
    args = ap.parse_args(argv)
    docs = all_documents()
    if args.only:
        sys.stdout.write(docs[args.only])
    else:
        sys.stdout.write(json.dumps({k: json.loads(v) for k, v in docs.items()}, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
