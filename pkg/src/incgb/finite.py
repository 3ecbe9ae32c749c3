"""Finite-width truncation and a classical Buchberger used as an oracle.

The classical side works on dense exponent vectors over the finitely many
variables of a truncated ring and shares no division or S-polynomial code
with :mod:`incgb.engine`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .algebra import Monomial, Polynomial, Ring, SymbolSchema, Variable
from .orders import OrderSpec
from .symmetry import apply, canonicalize_poly, increasing_maps


@dataclass(frozen=True)
class TruncatedRing:
    """Variables of ``ring`` whose free indices all lie in ``[width]``."""

    ring: Ring
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("width must be >= 0")

    def variables(self) -> list[Variable]:
        return [v for s in self.ring.schemas for v in s.variables(self.width)]

    def contains(self, f: Polynomial) -> bool:
        return f.ring == self.ring and f.extent <= self.width


def orbit_expand(B: Iterable[Polynomial], n: int, drop_wider: bool = False) -> list[Polynomial]:
    """All distinct images ``apply(pi, g)`` with ``pi`` in Inc(N) and the
    image supported in ``[n]``.

    An element with no such image is an error unless ``drop_wider`` is set,
    in which case it is skipped.
    """
    out: dict[Polynomial, None] = {}
    for g in B:
        if g.extent > n:
            if drop_wider:
                continue
            raise ValueError(f"width {n} is smaller than the extent {g.extent} of {g}")
        for pi in increasing_maps(g.support, n):
            out.setdefault(apply(pi, g), None)
    return list(out)


# ---------------------------------------------------------------------------
# classical Buchberger on exponent vectors
# ---------------------------------------------------------------------------


class _Dense:
    """Dense-exponent encoding of one truncated ring under one order."""

    def __init__(self, tr: TruncatedRing, order: OrderSpec):
        self.tr = tr
        self.field = tr.ring.field
        # position 0 holds the largest variable, so lex is tuple comparison
        self.vars = sorted(tr.variables(), key=order.variable_key, reverse=True)
        self.pos = {v: i for i, v in enumerate(self.vars)}
        self.graded = order.graded

    def key(self, e: tuple[int, ...]):
        return (sum(e), e) if self.graded else e

    def encode(self, f: Polynomial) -> dict[tuple[int, ...], object]:
        if f.ring != self.tr.ring:
            raise ValueError("polynomial over a different ring")
        out = {}
        n = len(self.vars)
        for m, c in f.terms.items():
            e = [0] * n
            for v, k in m.terms:
                if v not in self.pos:
                    raise ValueError(f"variable {v} outside the truncation to width {self.tr.width}")
                e[self.pos[v]] = k
            out[tuple(e)] = c
        return out

    def decode(self, p: dict) -> Polynomial:
        terms = {}
        for e, c in p.items():
            terms[Monomial((self.vars[i], k) for i, k in enumerate(e) if k)] = c
        return Polynomial(self.tr.ring, terms)

    def lead(self, p: dict):
        e = max(p, key=self.key)
        return e, p[e]

    def normal_form(self, p: dict, G: list[dict]) -> dict:
        p = dict(p)
        r = {}
        leads = [self.lead(g) for g in G]
        while p:
            e, c = self.lead(p)
            for g, (ge, gc) in zip(G, leads):
                if all(a >= b for a, b in zip(e, ge)):
                    shift = tuple(a - b for a, b in zip(e, ge))
                    q = c / gc
                    for ee, cc in g.items():
                        t = tuple(a + b for a, b in zip(ee, shift))
                        v = p.get(t, 0) - q * cc
                        if v:
                            p[t] = v
                        else:
                            p.pop(t, None)
                    break
            else:
                r[e] = c
                del p[e]
        return r

    def spoly(self, f: dict, g: dict) -> dict:
        fe, fc = self.lead(f)
        ge, gc = self.lead(g)
        l = tuple(max(a, b) for a, b in zip(fe, ge))
        out: dict = {}
        for poly, e0, c0, sign in ((f, fe, fc, 1), (g, ge, gc, -1)):
            shift = tuple(a - b for a, b in zip(l, e0))
            for e, c in poly.items():
                t = tuple(a + b for a, b in zip(e, shift))
                v = out.get(t, 0) + sign * c / c0
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return out

    def buchberger(self, gens: list[dict]) -> list[dict]:
        G = [g for g in gens if g]
        pairs = list(combinations(range(len(G)), 2))
        while pairs:
            i, j = pairs.pop(0)
            fi, fj = self.lead(G[i])[0], self.lead(G[j])[0]
            if all(a == 0 or b == 0 for a, b in zip(fi, fj)):
                continue
            h = self.normal_form(self.spoly(G[i], G[j]), G)
            if h:
                G.append(h)
                pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
        return self.reduced(G)

    def reduced(self, G: list[dict]) -> list[dict]:
        G = [g for g in G if g]
        # drop elements whose lead is divisible by another lead
        minimal = []
        for i, g in enumerate(G):
            e = self.lead(g)[0]
            dominated = False
            for j, h in enumerate(G):
                if i == j:
                    continue
                he = self.lead(h)[0]
                if all(a >= b for a, b in zip(e, he)) and (he != e or j < i):
                    dominated = True
                    break
            if not dominated:
                minimal.append(g)
        out = []
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1 :]
            e, c = self.lead(g)
            tail = {k: v for k, v in g.items() if k != e}
            r = self.normal_form(tail, others)
            r[e] = c
            out.append({k: v / c for k, v in r.items()})
        out.sort(key=lambda p: self.key(self.lead(p)[0]))
        return out


def finite_buchberger(gens: Sequence[Polynomial], ring: TruncatedRing, order: OrderSpec) -> list[Polynomial]:
    """Reduced classical Gröbner basis of ``gens`` in the truncated ring."""
    d = _Dense(ring, order)
    return [d.decode(g) for g in d.buchberger([d.encode(f) for f in gens])]


def finite_normal_form(f: Polynomial, G: Sequence[Polynomial], ring: TruncatedRing, order: OrderSpec) -> Polynomial:
    d = _Dense(ring, order)
    return d.decode(d.normal_form(d.encode(f), [d.encode(g) for g in G]))


def same_ideal(A: Sequence[Polynomial], B: Sequence[Polynomial], ring: TruncatedRing, order: OrderSpec) -> bool:
    """Whether ``A`` and ``B`` generate the same ideal of the truncated ring."""
    d = _Dense(ring, order)
    ea = [d.encode(f) for f in A]
    eb = [d.encode(f) for f in B]
    ga, gb = d.buchberger(ea), d.buchberger(eb)
    return all(not d.normal_form(f, gb) for f in ea) and all(not d.normal_form(f, ga) for f in eb)


def leading_monomials(G: Sequence[Polynomial], ring: TruncatedRing, order: OrderSpec) -> set[Monomial]:
    d = _Dense(ring, order)
    return {d.decode({d.lead(d.encode(g))[0]: 1}).monomials()[0] for g in G if g}


# ---------------------------------------------------------------------------
# rank-one tensors
# ---------------------------------------------------------------------------


def segre_ring(k: int = 2) -> Ring:
    """``x[i, j]`` (i in [k]) and ``y[m_1..m_k]``."""
    return Ring((SymbolSchema("x", (k,), 1), SymbolSchema("y", (), k)))


def segre_quadrics(k: int = 2, ring: Ring | None = None) -> list[Polynomial]:
    """Orbit representatives of the binomial quadrics that cut out rank-one
    tensors: swap the last ``k - l`` entries of two index tuples, all
    entries in ``[2k]``.  Nonzero, support shifted to an initial segment,
    up to sign, in a fixed enumeration order."""
    ring = ring or segre_ring(k)
    y = lambda m: ring.gen("y", *m)
    reps: dict[Polynomial, None] = {}
    tuples = list(product(range(1, 2 * k + 1), repeat=k))
    for l in range(1, k):
        for a, b in product(tuples, repeat=2):
            c = a[:l] + b[l:]
            d = b[:l] + a[l:]
            q = y(a) * y(b) - y(c) * y(d)
            if not q:
                continue
            # the quadric family is closed under relabelling indices
            q0, _ = canonicalize_poly(q)
            if q0 in reps or -q0 in reps:
                continue
            reps[q0] = None
    return list(reps)


def segre_substitution(f: Polynomial, k: int = 2) -> Polynomial:
    """Apply ``y[m] -> prod_i x[i, m_i]``."""
    ring = f.ring
    images = {}
    for m in f.terms:
        for v, _ in m.terms:
            if v.symbol == "y" and v not in images:
                out = ring.one()
                for i, j in enumerate(v.free, start=1):
                    out = out * ring.gen("x", i, j)
                images[v] = out
    return f.substitute(images) if images else f

