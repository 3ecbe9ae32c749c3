"""Regenerate the bundled problem files under src/incgb/data."""

import json

from incgb import io as pio
from incgb.engine import EngineConfig
from incgb.finite import segre_quadrics, segre_ring
from incgb.problems import (
    cycle_monomial,
    cycle_ring,
    onefactor_generators,
    onefactor_reference_basis,
    onefactor_ring,
    rowlex_ring,
)

D = pio.DATA_DIR


def write(name, pf):
    (D / name).write_text(pio.dumps(pf))


def write_json(name, obj):
    (D / name).write_text(json.dumps(obj, indent=2) + "\n")


def main():
    R = onefactor_ring()
    ref = onefactor_reference_basis(R)
    y = lambda i, j: R.gen("y", i, j)
    write("onefactor.json", pio.ProblemFile(R, "elim-onefactor", onefactor_generators(R)))
    write("onefactor-elim.json", pio.ProblemFile(R, "elim-onefactor", ref[5:]))
    write(
        "onefactor-member.json",
        pio.ProblemFile(
            R, "elim-onefactor", onefactor_generators(R), target=y(5, 4) * y(2, 1) - y(5, 1) * y(4, 2)
        ),
    )

    Rr = rowlex_ring(2)
    x = lambda i, j: Rr.gen("x", i, j)
    write(
        "rowlex-smoke.json",
        pio.ProblemFile(
            Rr,
            "rowlex",
            [x(1, 2) * x(2, 1) - x(1, 1) * x(2, 2), x(1, 1) ** 2 - x(2, 1)],
            EngineConfig(max_steps=500, max_width=10, max_degree=10),
        ),
    )

    S = segre_ring(2)
    write(
        "segre-k2.json",
        pio.ProblemFile(
            S,
            pio.parse_order({"precedence": ["y", "x"]}),
            segre_quadrics(2, S),
            EngineConfig(max_steps=5000, max_width=8, max_degree=8),
        ),
    )

    C = cycle_ring()
    write_json(
        "cycles.json",
        {
            "ring": pio.ring_to_list(C),
            "left": pio.monomial_to_factors(cycle_monomial(3, C)),
            "right": pio.monomial_to_factors(cycle_monomial(4, C)),
        },
    )
    leaf = lambda lab: {"label": lab, "children": []}
    write_json(
        "single-node-vs-bigger-tree.json",
        {
            "poset": {"chain": 2},
            "left": leaf(0),
            "right": {"label": 1, "children": [leaf(0), {"label": 1, "children": [leaf(0)]}]},
        },
    )


if __name__ == "__main__":
    main()
