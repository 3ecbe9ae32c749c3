"""Equivariant division, S-polynomials and the equivariant Buchberger loop."""

from __future__ import annotations

import heapq
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .algebra import Coefficient, Monomial, Polynomial, Ring
from .orders import OrderSpec, ZeroPolynomialError
from .symmetry import IncWitness, apply, canonicalize, orbit_pair_decomposition
from .wpo import pi_divides

log = logging.getLogger(__name__)

COMPLETE = "complete"
EXHAUSTED = "budget-exhausted"


class EngineError(ValueError):
    pass


@dataclass(frozen=True)
class EngineConfig:
    """Termination controls.  ``None`` means unbounded.

    ``max_steps`` bounds the number of processed pairs; S-polynomials whose
    lcm exceeds ``max_width`` (support size) or ``max_degree`` are skipped,
    which makes the run incomplete.
    """

    max_steps: Optional[int] = None
    max_width: Optional[int] = None
    max_degree: Optional[int] = None
    use_product_criterion: bool = True
    workers: int = 1

    def __post_init__(self):
        for name in ("max_steps", "max_width", "max_degree"):
            val = getattr(self, name)
            if val is not None and val < 1:
                raise ValueError(f"{name} must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_dict(self) -> dict:
        return {
            "max_steps": self.max_steps,
            "max_width": self.max_width,
            "max_degree": self.max_degree,
            "use_product_criterion": self.use_product_criterion,
        }


class Basis:
    """An ordered list of polynomials together with the ring and order."""

    __slots__ = ("elements", "order", "ring", "_lead")

    def __init__(self, elements: Iterable[Polynomial], order: OrderSpec, ring: Ring):
        self.elements = tuple(elements)
        self.order = order
        self.ring = ring
        for g in self.elements:
            if not g:
                raise EngineError("basis elements must be nonzero")
            if g.ring != ring:
                raise EngineError("basis element over a different ring")
        self._lead = tuple(order.leading_term(g) for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def leading_terms(self) -> tuple[tuple[Monomial, Coefficient], ...]:
        return self._lead

    @property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self._lead)

    def canonical_leading_monomials(self) -> set[Monomial]:
        return {canonicalize(m)[0] for m in self.leading_monomials}

    def with_elements(self, elements: Iterable[Polynomial]) -> "Basis":
        return Basis(elements, self.order, self.ring)

    def __repr__(self):
        return f"Basis({[str(g) for g in self.elements]})"


@dataclass
class Stats:
    pairs: int = 0
    spolys: int = 0
    product_skipped: int = 0
    budget_skipped: int = 0
    reductions: int = 0
    zero_reductions: int = 0
    added: int = 0
    max_width: int = 0

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class GBResult:
    status: str
    basis: Basis
    stats: Stats = field(default_factory=Stats)
    raw: Optional[Basis] = None

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    witness: IncWitness
    index: int
    multiplier: Monomial
    coefficient: Coefficient


def _find_reducer(m: Monomial, B: Basis) -> Optional[tuple[int, IncWitness]]:
    for k, lm in enumerate(B.leading_monomials):
        w = pi_divides(lm, m)
        if w is not None:
            return k, w
    return None


def reduce(f: Polynomial, B: Basis, *, top_only: bool = False) -> tuple[Polynomial, list[Step]]:
    """Divide ``f`` by the orbits of ``B``.

    Returns ``(remainder, certificate)`` with
    ``f == sum(c * m * apply(pi, B[k]) for pi, k, m, c in certificate) + remainder``.
    The largest reducible term is always eliminated next, using the first
    basis element (list order) and its first witness.
    """
    if f.terms and f.ring != B.ring:
        raise EngineError("polynomial and basis live in different rings")
    key = B.order.key
    p = dict(f.terms)
    rem: dict[Monomial, Coefficient] = {}
    cert: list[Step] = []
    while p:
        m = max(p, key=key)
        c = p[m]
        hit = _find_reducer(m, B)
        if hit is None:
            if top_only:
                rem.update(p)
                break
            rem[m] = c
            del p[m]
            continue
        k, w = hit
        g = B.elements[k]
        w = w.extend(g.support)
        lm, lc = B.leading_terms[k]
        q = m / apply(w, lm)
        coef = c / lc
        cert.append(Step(w, k, q, coef))
        for t, a in g.terms.items():
            tm = apply(w, t) * q
            s = p.get(tm, 0) - coef * a
            if s:
                p[tm] = s
            else:
                p.pop(tm, None)
    return Polynomial._raw(f.ring, rem), cert


def reconstruct(cert: Sequence[Step], B: Basis, remainder: Polynomial) -> Polynomial:
    out = remainder
    for st in cert:
        out = out + apply(st.witness, B.elements[st.index]).mul_term(st.coefficient, st.multiplier)
    return out


def normal_form(f: Polynomial, B: Basis) -> Polynomial:
    return reduce(f, B)[0]


def monic(f: Polynomial, order: OrderSpec) -> Polynomial:
    _, lc = order.leading_term(f)
    return f if lc == 1 else f.scale(1 / lc)


def s_polynomial(f: Polynomial, g: Polynomial, order: OrderSpec) -> Polynomial:
    if not f or not g:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    mf, cf = order.leading_term(f)
    mg, cg = order.leading_term(g)
    l = mf.lcm(mg)
    return f.mul_term(1 / cf, l / mf) - g.mul_term(1 / cg, l / mg)


# ---------------------------------------------------------------------------
# the equivariant Buchberger algorithm
# ---------------------------------------------------------------------------


def _critical_items(
    f: Polynomial, g: Polynomial, same: bool, order: OrderSpec
) -> list[tuple[IncWitness, IncWitness]]:
    items = orbit_pair_decomposition(f.extent, g.extent)
    if not same:
        return items
    # S(tau f, sigma f) = -S(sigma f, tau f); the diagonal gives S(f, f) = 0
    seen = set()
    out = []
    for sig, tau in items:
        if sig == tau or (tau, sig) in seen:
            continue
        seen.add((sig, tau))
        out.append((sig, tau))
    return out


def _pair_key(f: Polynomial, g: Polynomial, order: OrderSpec) -> tuple[int, int]:
    l = order.leading_monomial(f).lcm(order.leading_monomial(g))
    return canonicalize(l)[0].width, l.degree


def _check_inputs(S: Sequence[Polynomial], order: OrderSpec) -> Ring:
    if not S:
        raise EngineError("no generators")
    ring = S[0].ring
    for f in S:
        if not f:
            raise EngineError("zero generator")
        if f.ring != ring:
            raise EngineError("generators over different rings")
        for m in f.terms:
            for v in m.variables():
                order.variable_key(v)
    return ring


def equivariant_buchberger(
    S: Sequence[Polynomial],
    order: OrderSpec,
    config: EngineConfig = EngineConfig(),
    ring: Optional[Ring] = None,
    interreduce_result: bool = True,
) -> GBResult:
    """Run the equivariant Buchberger algorithm on generators ``S``.

    Pairs ``(f, g)`` (self-pairs included) are taken from a queue ordered by
    (width of the canonicalized lcm of leading monomials, its degree,
    insertion order).  For each pair every diagonal-orbit representative
    ``(sigma f, tau g)`` yields an S-polynomial; these are reduced against a
    snapshot of the basis, then merged in order, each surviving remainder
    being reduced again against the grown basis before it is appended.
    """
    if not S:
        if ring is None:
            raise EngineError("empty generator list needs an explicit ring")
        empty = Basis((), order, ring)
        return GBResult(COMPLETE, empty, Stats(), raw=empty)
    found = _check_inputs(S, order)
    if ring is not None and ring != found:
        raise EngineError("generators are not over the given ring")
    ring = found

    elems: list[Polynomial] = []
    for f in S:
        f = monic(f, order)
        if f not in elems:
            elems.append(f)
    stats = Stats()
    queue: list[tuple[int, int, int, int, int]] = []
    seq = 0

    def push(i: int, j: int):
        nonlocal seq
        heapq.heappush(queue, (*_pair_key(elems[i], elems[j], order), seq, i, j))
        seq += 1

    for j in range(len(elems)):
        for i in range(j + 1):
            push(i, j)

    truncated = False
    pool = ThreadPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        while queue:
            if config.max_steps is not None and stats.pairs >= config.max_steps:
                truncated = True
                break
            *_, i, j = heapq.heappop(queue)
            stats.pairs += 1
            f, g = elems[i], elems[j]
            spolys = []
            for sig, tau in _critical_items(f, g, i == j, order):
                sf, tg = apply(sig, f), apply(tau, g)
                lf, lg = order.leading_monomial(sf), order.leading_monomial(tg)
                l = lf.lcm(lg)
                if (config.max_width is not None and l.width > config.max_width) or (
                    config.max_degree is not None and l.degree > config.max_degree
                ):
                    stats.budget_skipped += 1
                    truncated = True
                    continue
                if config.use_product_criterion and lf.gcd_is_one(lg):
                    stats.product_skipped += 1
                    continue
                spolys.append(s_polynomial(sf, tg, order))
            if not spolys:
                continue
            stats.spolys += len(spolys)
            snapshot = Basis(elems, order, ring)
            if pool is not None:
                remainders = list(pool.map(lambda h: reduce(h, snapshot)[0], spolys))
            else:
                remainders = [reduce(h, snapshot)[0] for h in spolys]
            stats.reductions += len(spolys)
            for h in remainders:
                if h:
                    h = reduce(h, Basis(elems, order, ring))[0]
                if not h:
                    stats.zero_reductions += 1
                    continue
                h = monic(h, order)
                elems.append(h)
                stats.added += 1
                stats.max_width = max(stats.max_width, h.width)
                log.debug("added #%d: %s", len(elems) - 1, h)
                k = len(elems) - 1
                for i2 in range(k + 1):
                    push(i2, k)
    finally:
        if pool is not None:
            pool.shutdown()

    raw = Basis(elems, order, ring)
    status = EXHAUSTED if truncated else COMPLETE
    basis = interreduce(raw) if interreduce_result else raw
    return GBResult(status, basis, stats, raw=raw)


def groebner(S, order, **kw) -> GBResult:
    return equivariant_buchberger(S, order, EngineConfig(**kw))


# ---------------------------------------------------------------------------
# interreduction and elimination
# ---------------------------------------------------------------------------


def canonical_sort_key(order: OrderSpec):
    def key(g: Polynomial):
        lm = order.leading_monomial(g)
        return (g.width, order.key(canonicalize(lm)[0]), len(g.terms), order.key(lm), sorted(g.terms))

    return key


def interreduce(B: Basis) -> Basis:
    """Minimalize and tail-reduce ``B``.

    Elements whose leading monomial is divisible up to Inc(N) by another
    element's leading monomial are replaced by their remainder modulo the
    orbits of the others (and dropped when that is zero), scanning from the
    last element so earlier elements are preferred.  Survivors are then
    tail-reduced and made monic.  Elements are not shifted down to canonical
    supports: such a shift need not stay inside the ideal.
    """
    order = B.order
    elems = [monic(g, order) for g in B.elements]
    changed = True
    while changed:
        changed = False
        for idx in range(len(elems) - 1, -1, -1):
            g = elems[idx]
            others = elems[:idx] + elems[idx + 1 :]
            if not others:
                continue
            lm = order.leading_monomial(g)
            if not any(pi_divides(order.leading_monomial(h), lm) is not None for h in others):
                continue
            r, _ = reduce(g, Basis(others, order, B.ring))
            if r:
                elems[idx] = monic(r, order)
            else:
                del elems[idx]
            changed = True
            break
    out = []
    for idx, g in enumerate(elems):
        m, c = order.leading_term(g)
        lead = Polynomial._raw(B.ring, {m: c})
        tail, _ = reduce(g - lead, Basis(elems, order, B.ring))
        out.append(monic(lead + tail, order))
    out.sort(key=canonical_sort_key(order))
    return Basis(out, order, B.ring)


def extract_elimination(B: Basis, kept_symbols: Iterable[str]) -> Basis:
    kept = frozenset(kept_symbols)
    unknown = kept - set(B.ring.names)
    if unknown:
        raise EngineError(f"unknown symbols {sorted(unknown)}")
    if not B.order.is_elimination_for(kept):
        raise EngineError(
            f"order {B.order.precedence} does not eliminate {sorted(set(B.ring.names) - kept)}"
            f" in favour of {sorted(kept)}"
        )
    return B.with_elements(g for g in B.elements if g.symbols() <= kept)


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------


def criterion_failures(B: Basis) -> list[tuple[int, int, IncWitness, IncWitness, Polynomial]]:
    """Every diagonal-orbit S-polynomial of every pair (including self
    pairs and mirrored items) with a nonzero remainder modulo ``B``."""
    bad = []
    els = B.elements
    for j in range(len(els)):
        for i in range(j + 1):
            f, g = els[i], els[j]
            for sig, tau in orbit_pair_decomposition(f.extent, g.extent):
                h = s_polynomial(apply(sig, f), apply(tau, g), B.order)
                r, _ = reduce(h, B)
                if r:
                    bad.append((i, j, sig, tau, r))
    return bad


def is_equivariant_groebner(B: Basis) -> bool:
    return not criterion_failures(B)
