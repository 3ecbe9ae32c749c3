"""The action of Inc(N), the strictly increasing maps N -> N, on free indices.

Elements of Inc(N) are represented by finite partial maps (:class:`IncWitness`)
defined on the supports they act on.  A partial map ``s_1 < ... < s_k`` ->
``t_1 < ... < t_k`` extends to an element of Inc(N) exactly when
``t_1 >= s_1`` and ``t_{i+1} - t_i >= s_{i+1} - s_i``; witnesses are checked
against this on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, TypeVar, Union

from .algebra import Monomial, Polynomial, Variable


class IncompleteWitnessError(ValueError):
    """The witness is not defined on the whole support of its argument."""


@dataclass(frozen=True)
class IncWitness:
    mapping: tuple[tuple[int, int], ...]

    def __post_init__(self):
        mapping = tuple((int(s), int(t)) for s, t in self.mapping)
        object.__setattr__(self, "mapping", mapping)
        prev = None
        for s, t in mapping:
            if s < 1 or t < s:
                raise ValueError(f"{s}->{t} does not extend to an increasing map of N")
            if prev is not None and (s <= prev[0] or t - prev[1] < s - prev[0]):
                raise ValueError(f"witness {mapping} is not a restriction of an element of Inc(N)")
            prev = (s, t)
        object.__setattr__(self, "_lookup", dict(mapping))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "IncWitness":
        return cls(tuple(sorted(d.items())))

    @classmethod
    def identity(cls, support: Iterable[int]) -> "IncWitness":
        return cls(tuple((j, j) for j in sorted(support)))

    @property
    def sources(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.mapping)

    @property
    def targets(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.mapping)

    def __call__(self, j: int) -> int:
        try:
            return self._lookup[j]
        except KeyError:
            raise IncompleteWitnessError(f"index {j} not covered by witness {self}") from None

    def covers(self, support: Iterable[int]) -> bool:
        return all(j in self._lookup for j in support)

    def compose(self, inner: "IncWitness") -> "IncWitness":
        """``self o inner``: apply ``inner`` first."""
        return IncWitness(tuple((s, self(t)) for s, t in inner.mapping))

    def extend(self, support: Iterable[int]) -> "IncWitness":
        """Extend to ``support`` sending each new index as low as the
        increasing constraint allows."""
        extra = sorted(set(support).difference(self._lookup))
        if not extra:
            return self
        merged = sorted(set(self._lookup).union(extra))
        pairs = []
        prev_s = prev_t = 0
        for s in merged:
            t = self._lookup.get(s)
            if t is None:
                t = prev_t + (s - prev_s)
            pairs.append((s, t))
            prev_s, prev_t = s, t
        return IncWitness(tuple(pairs))

    def is_identity(self) -> bool:
        return all(s == t for s, t in self.mapping)

    def to_dict(self) -> dict[int, int]:
        return dict(self.mapping)

    def __str__(self):
        return "{" + ", ".join(f"{s}->{t}" for s, t in self.mapping) + "}"


T = TypeVar("T", Variable, Monomial, Polynomial)


def _apply_var(pi: IncWitness, v: Variable) -> Variable:
    if not v.free:
        return v
    return Variable(v.symbol, v.fixed, tuple(pi(j) for j in v.free))


def _apply_mono(pi: IncWitness, m: Monomial) -> Monomial:
    # increasing maps are injective on variables, so no exponents merge
    return Monomial._from_sorted(tuple(sorted((_apply_var(pi, v), e) for v, e in m.terms)))


def apply(pi: IncWitness, f: T) -> T:
    """Act by ``pi`` on a variable, monomial or polynomial."""
    if isinstance(f, Variable):
        return _apply_var(pi, f)
    if isinstance(f, Monomial):
        return _apply_mono(pi, f)
    if isinstance(f, Polynomial):
        return Polynomial._raw(f.ring, {_apply_mono(pi, m): c for m, c in f.terms.items()})
    raise TypeError(f"cannot act on {type(f).__name__}")


def _compress(support: Iterable[int]) -> IncWitness:
    return IncWitness(tuple((i + 1, j) for i, j in enumerate(sorted(support))))


def _relabel(m: Monomial, back: dict[int, int]) -> Monomial:
    return Monomial._from_sorted(
        tuple(sorted((Variable(v.symbol, v.fixed, tuple(back[j] for j in v.free)), e) for v, e in m.terms))
    )


def canonicalize(m: Monomial) -> tuple[Monomial, IncWitness]:
    """Orbit representative of ``m`` with support ``[w]`` and the witness
    mapping it back onto ``m``."""
    w = _compress(m.support)
    if w.is_identity():
        return m, w
    return _relabel(m, {t: s for s, t in w.mapping}), w


def canonicalize_poly(f: Polynomial) -> tuple[Polynomial, IncWitness]:
    """Shift ``f`` down along the order-preserving bijection from its full
    support onto ``[w]``.

    Only ``apply(witness, result) == f`` is guaranteed: the shifted
    polynomial need not lie in an Inc-stable ideal that contains ``f``.
    """
    w = _compress(f.support)
    if w.is_identity():
        return f, w
    back = {t: s for s, t in w.mapping}
    return Polynomial._raw(f.ring, {_relabel(m, back): c for m, c in f.terms.items()}), w


def orbit_pair_decomposition(p: int, q: int) -> list[tuple[IncWitness, IncWitness]]:
    """All pairs of increasing maps ``sigma: [p] -> [t]``, ``tau: [q] -> [t]``
    whose images cover ``[t]``.

    Sorted by ``(t, image of sigma as bitmask, image of tau as bitmask)``.
    """
    if p < 0 or q < 0:
        raise ValueError("p, q must be >= 0")
    out = []
    for t in range(max(p, q), p + q + 1):
        full = set(range(1, t + 1))
        rows = []
        for a in combinations(range(1, t + 1), p):
            rest = full.difference(a)
            # tau's image must contain the complement of sigma's image
            need = len(rest)
            if need > q:
                continue
            for extra in combinations(sorted(a), q - need):
                b = tuple(sorted(rest.union(extra)))
                rows.append((_mask(a), _mask(b), a, b))
        rows.sort()
        for _, _, a, b in rows:
            out.append(
                (
                    IncWitness(tuple(zip(range(1, p + 1), a))),
                    IncWitness(tuple(zip(range(1, q + 1), b))),
                )
            )
    return out


def _mask(image: Iterable[int]) -> int:
    return sum(1 << (j - 1) for j in image)


def increasing_maps(support: Iterable[int], n: int) -> Iterator[IncWitness]:
    """Every witness on ``support`` with image in ``[n]`` that extends to
    Inc(N), in lexicographic order of image tuples."""
    src = sorted(support)
    k = len(src)
    if k == 0:
        yield IncWitness(())
        return

    def rec(i: int, lo: int, acc: list[int]):
        if i == k:
            yield IncWitness(tuple(zip(src, acc)))
            return
        # leave room for the remaining indices
        hi = n - (src[-1] - src[i])
        for t in range(lo, hi + 1):
            acc.append(t)
            nxt = t + (src[i + 1] - src[i]) if i + 1 < k else 0
            yield from rec(i + 1, nxt, acc)
            acc.pop()

    yield from rec(0, src[0], [])


def orbit_images(f: Union[Monomial, Polynomial], n: int) -> list:
    """Distinct images of ``f`` under Inc(N) with support inside ``[n]``."""
    seen = {}
    for pi in increasing_maps(f.support, n):
        g = apply(pi, f)
        seen.setdefault(g, None)
    return list(seen)
