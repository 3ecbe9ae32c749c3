"""Monomial orders compatible with the Inc(N)-action.

An :class:`OrderSpec` is lexicographic: variables are ranked by symbol
precedence, then by ``(fixed, free)`` indices ascending, and two monomials are
compared by reading exponents from the largest variable downward.  With
``graded=True`` total degree is compared first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Monomial, Polynomial, Ring, Variable
from .symmetry import IncWitness, apply

LESS, EQUAL, GREATER = -1, 0, 1

_KEY_CACHE_LIMIT = 1 << 18


class ZeroPolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class OrderSpec:
    """``precedence`` lists symbol names from largest to smallest.

    ``free_descending`` reverses the comparison of free indices; it exists
    only to exhibit an order that is *not* compatible with the action.
    """

    precedence: tuple[str, ...]
    graded: bool = False
    free_descending: bool = False
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "precedence", tuple(self.precedence))
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError(f"repeated symbol in precedence {self.precedence}")
        object.__setattr__(
            self, "_rank", {s: len(self.precedence) - i for i, s in enumerate(self.precedence)}
        )

    def variable_key(self, v: Variable) -> tuple:
        try:
            rank = self._rank[v.symbol]
        except KeyError:
            raise ValueError(f"symbol {v.symbol!r} not covered by order {self.precedence}") from None
        free = tuple(-j for j in v.free) if self.free_descending else v.free
        return (rank, v.fixed, free)

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        k = self._cache.get(m)
        if k is None:
            vk = self.variable_key
            # tuple comparison of (variable, exponent) pairs read from the
            # largest variable down is exactly lex comparison
            lex = tuple(sorted(((vk(v), e) for v, e in m.terms), reverse=True))
            k = (m.degree, lex) if self.graded else lex
            if len(self._cache) > _KEY_CACHE_LIMIT:
                self._cache.clear()
            self._cache[m] = k
        return k

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def leading_term(self, f: Polynomial):
        if not f.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        m = max(f.terms, key=self.key)
        return m, f.terms[m]

    def leading_monomial(self, f: Polynomial) -> Monomial:
        return self.leading_term(f)[0]

    def sorted_terms(self, f: Polynomial) -> list:
        return sorted(f.terms.items(), key=lambda t: self.key(t[0]), reverse=True)

    def is_elimination_for(self, kept: set[str] | frozenset[str]) -> bool:
        """True when every kept symbol ranks below every eliminated one."""
        if self.graded and set(kept) != set(self.precedence):
            return False
        n = len(kept)
        return set(self.precedence[len(self.precedence) - n :]) == set(kept)

    def to_dict(self) -> dict:
        d = {"precedence": list(self.precedence), "grading": "degree" if self.graded else "none"}
        if self.free_descending:
            d["free_indices"] = "descending"
        return d


def compare(spec: OrderSpec, a: Monomial, b: Monomial) -> int:
    return spec.compare(a, b)


def leading_monomial(spec: OrderSpec, f: Polynomial):
    """``(monomial, coefficient)`` of the largest term of ``f``."""
    return spec.leading_term(f)


PRESETS = ("rowlex", "elim-onefactor")


def preset(name: str, ring: Ring) -> OrderSpec:
    """Named orders.  ``rowlex`` ranks symbols in declaration order (first is
    largest); ``elim-onefactor`` puts every ``x`` above every ``y``."""
    if name == "rowlex":
        return OrderSpec(ring.names)
    if name == "elim-onefactor":
        rest = tuple(n for n in ring.names if n not in ("x", "y"))
        if set(ring.names) & {"x", "y"} != {"x", "y"}:
            raise ValueError("elim-onefactor needs symbols x and y")
        return OrderSpec(("x",) + rest + ("y",))
    raise ValueError(f"unknown order preset {name!r}; choose from {PRESETS}")


# ---------------------------------------------------------------------------
# randomized compatibility check
# ---------------------------------------------------------------------------


@dataclass
class CompatibilityReport:
    passed: bool
    samples: int
    counterexample: Optional[tuple[Monomial, Monomial, IncWitness]] = None
    reason: str = ""

    def __bool__(self):
        return self.passed


def random_variable(ring: Ring, rng: random.Random, max_index: int) -> Variable:
    s = rng.choice(ring.schemas)
    fixed = tuple(rng.randint(1, b) for b in s.fixed_bounds)
    while True:
        free = tuple(rng.randint(1, max_index) for _ in range(s.free_arity))
        if s.admits_free(free):
            return Variable(s.name, fixed, free)


def random_monomial(
    ring: Ring, rng: random.Random, max_index: int = 6, max_vars: int = 3, max_exp: int = 2
) -> Monomial:
    n = rng.randint(0, max_vars)
    return Monomial((random_variable(ring, rng, max_index), rng.randint(1, max_exp)) for _ in range(n))


def random_witness(support, rng: random.Random, spread: int = 3) -> IncWitness:
    """A random element of Inc(N) restricted to ``support``."""
    pairs = []
    last_s = last_t = 0
    for s in sorted(support):
        t = last_t + (s - last_s) + rng.randint(0, spread)
        pairs.append((s, t))
        last_s, last_t = s, t
    return IncWitness(tuple(pairs))


def check_compatibility(
    spec: OrderSpec,
    ring: Ring,
    samples: int = 10_000,
    seed: int = 0,
    max_index: int = 6,
) -> CompatibilityReport:
    """Sample ``u < v`` and ``pi`` and check ``pi u < pi v`` and ``pi u >= u``."""
    rng = random.Random(seed)
    for _ in range(samples):
        u = random_monomial(ring, rng, max_index)
        v = random_monomial(ring, rng, max_index)
        c = spec.compare(u, v)
        if c == EQUAL:
            continue
        if c == GREATER:
            u, v = v, u
        pi = random_witness(u.support | v.support, rng)
        pu, pv = apply(pi, u), apply(pi, v)
        if spec.compare(pu, pv) != LESS:
            return CompatibilityReport(False, samples, (u, v, pi), "pi u < pi v violated")
        if spec.compare(pu, u) == LESS:
            return CompatibilityReport(False, samples, (u, v, pi), "pi u >= u violated")
    return CompatibilityReport(True, samples)
