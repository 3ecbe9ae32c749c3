"""Rings, generators and reference data for the worked examples."""

from __future__ import annotations

import random

from .algebra import Monomial, Polynomial, Ring, SymbolSchema, Variable


def onefactor_ring(field=None) -> Ring:
    """``x_i`` and ``y_ij`` with ``i > j``."""
    schemas = (SymbolSchema("x", (), 1), SymbolSchema("y", (), 2, "decreasing"))
    return Ring(schemas) if field is None else Ring(schemas, field)


def onefactor_generators(ring: Ring | None = None) -> list[Polynomial]:
    R = ring or onefactor_ring()
    return [R.gen("y", 2, 1) - R.gen("x", 2) * R.gen("x", 1)]


def onefactor_reference_basis(ring: Ring | None = None) -> list[Polynomial]:
    """Reference basis of seven binomials for the one-factor model; the last
    two generate the elimination ideal in the y variables."""
    R = ring or onefactor_ring()
    x = lambda i: R.gen("x", i)
    y = lambda i, j: R.gen("y", i, j)
    return [
        x(1) * x(2) - y(2, 1),
        x(3) * y(2, 1) - x(2) * y(3, 1),
        x(3) * y(2, 1) - x(1) * y(3, 2),
        x(2) * y(3, 1) - x(1) * y(3, 2),
        x(1) ** 2 * y(3, 2) - y(3, 1) * y(2, 1),
        y(4, 3) * y(2, 1) - y(4, 1) * y(3, 2),
        y(4, 2) * y(3, 1) - y(4, 1) * y(3, 2),
    ]


def rowlex_ring(k: int = 1, field=None) -> Ring:
    """``x[i, j]`` with ``i`` in ``[k]`` fixed and ``j`` free."""
    schemas = (SymbolSchema("x", (k,), 1),)
    return Ring(schemas) if field is None else Ring(schemas, field)


def cycle_ring() -> Ring:
    return Ring((SymbolSchema("y", (), 2),))


def cycle_monomial(m: int, ring: Ring | None = None) -> Monomial:
    """``y_12 y_23 ... y_m1``: the directed cycle on ``m`` vertices."""
    if m < 2:
        raise ValueError("cycles need at least two vertices")
    R = ring or cycle_ring()
    return Monomial((R.var("y", i, i % m + 1), 1) for i in range(1, m + 1))


def random_rowlex_input(
    seed: int,
    max_k: int = 2,
    max_width: int = 3,
    max_degree: int = 2,
    max_generators: int = 2,
    max_terms: int = 3,
    coefficients=(-2, -1, 1, 2),
) -> tuple[Ring, list[Polynomial]]:
    """Seeded small nonzero generators over the row-bounded ring."""
    rng = random.Random(seed)
    k = rng.randint(1, max_k)
    R = rowlex_ring(k)
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        f = R.zero()
        while not f:
            terms = []
            for _ in range(rng.randint(1, max_terms)):
                deg = rng.randint(0, max_degree)
                m = Monomial(
                    (Variable("x", (rng.randint(1, k),), (rng.randint(1, max_width),)), 1) for _ in range(deg)
                )
                terms.append((rng.choice(coefficients), m))
            f = R.from_terms(terms)
        gens.append(f)
    return R, gens
