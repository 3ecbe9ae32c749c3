"""Exact coefficients, indexed variables, monomials and sparse polynomials.

Variables carry a symbol name, a tuple of fixed (bounded) indices and a tuple
of free indices in N = {1, 2, ...}.  Only the free indices are moved by the
monoid of strictly increasing maps N -> N (see :mod:`incgb.symmetry`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

CONSTRAINTS = ("none", "decreasing", "distinct")


class DomainMismatchError(ValueError):
    """Raised when polynomials from different rings or fields are combined."""


# ---------------------------------------------------------------------------
# coefficients
# ---------------------------------------------------------------------------


class ModP:
    """An element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DomainMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (other - self.v) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        # symmetric representative reads better for binomials
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


Coefficient = Union[Fraction, ModP]


@dataclass(frozen=True)
class Field:
    """Coefficient domain: exact rationals (``p == 0``) or F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or self.p == 1:
            raise ValueError(f"invalid characteristic {self.p}")
        if self.p > 1 and any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __call__(self, value) -> Coefficient:
        if self.p == 0:
            if isinstance(value, ModP):
                raise DomainMismatchError("F_p element used over the rationals")
            return Fraction(value)
        if isinstance(value, ModP):
            if value.p != self.p:
                raise DomainMismatchError(f"F_{value.p} element used over F_{self.p}")
            return value
        value = Fraction(value)
        return ModP(value.numerator, self.p) / value.denominator

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# symbols and variables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolSchema:
    """A family of variables ``name[fixed...; free...]``.

    ``fixed_bounds[i]`` bounds the i-th fixed index to ``1..fixed_bounds[i]``.
    ``constraint`` restricts the free index tuple: ``decreasing`` means
    strictly decreasing (e.g. y_ij with i > j), ``distinct`` pairwise distinct.
    """

    name: str
    fixed_bounds: tuple[int, ...] = ()
    free_arity: int = 1
    constraint: str = "none"

    def __post_init__(self):
        if not self.name or not self.name.isidentifier():
            raise ValueError(f"bad symbol name {self.name!r}")
        object.__setattr__(self, "fixed_bounds", tuple(self.fixed_bounds))
        if any(b < 1 for b in self.fixed_bounds):
            raise ValueError(f"{self.name}: fixed bounds must be >= 1")
        if self.free_arity < 0:
            raise ValueError(f"{self.name}: free arity must be >= 0")
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"{self.name}: unknown constraint {self.constraint!r}")
        if self.constraint == "decreasing" and self.free_arity < 2:
            raise ValueError(f"{self.name}: decreasing constraint needs free arity >= 2")

    def admits_free(self, free: tuple[int, ...]) -> bool:
        if len(free) != self.free_arity or any(j < 1 for j in free):
            return False
        if self.constraint == "decreasing":
            return all(a > b for a, b in zip(free, free[1:]))
        if self.constraint == "distinct":
            return len(set(free)) == len(free)
        return True

    def check(self, fixed: tuple[int, ...], free: tuple[int, ...]) -> None:
        if len(fixed) != len(self.fixed_bounds) or any(
            not 1 <= i <= b for i, b in zip(fixed, self.fixed_bounds)
        ):
            raise ValueError(f"{self.name}: fixed indices {fixed} out of bounds {self.fixed_bounds}")
        if not self.admits_free(free):
            raise ValueError(
                f"{self.name}: free indices {free} violate arity {self.free_arity}"
                f" / constraint {self.constraint!r}"
            )

    def variables(self, n: int) -> Iterator["Variable"]:
        """All variables of this family whose free indices lie in ``[n]``."""
        for fixed in product(*(range(1, b + 1) for b in self.fixed_bounds)):
            for free in product(range(1, n + 1), repeat=self.free_arity):
                if self.admits_free(free):
                    yield Variable(self.name, fixed, free)


class Variable(NamedTuple):
    symbol: str
    fixed: tuple[int, ...]
    free: tuple[int, ...]

    def __str__(self):
        idx = self.fixed + self.free
        if not idx:
            return self.symbol
        return f"{self.symbol}[{','.join(map(str, idx))}]"

    def pretty(self) -> str:
        idx = self.fixed + self.free
        if all(i < 10 for i in idx):
            return self.symbol + "".join(map(str, idx))
        return f"{self.symbol}_{{{','.join(map(str, idx))}}}"


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------


class Monomial:
    """A finitely supported exponent map over variables.

    Terms are kept sorted by the structural order on :class:`Variable`
    (symbol name, fixed indices, free indices), so equality and hashing are
    structural.  Instances are immutable.
    """

    __slots__ = ("terms", "_hash", "_map")

    def __init__(self, terms: Iterable[tuple[Variable, int]] | Mapping[Variable, int] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Variable, int] = {}
        for v, e in items:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
            if e:
                acc[v] = acc.get(v, 0) + e
        self.terms = tuple(sorted(acc.items()))
        self._hash = hash(self.terms)
        self._map = None

    @classmethod
    def _from_sorted(cls, terms: tuple[tuple[Variable, int], ...]) -> "Monomial":
        m = cls.__new__(cls)
        m.terms = terms
        m._hash = hash(terms)
        m._map = None
        return m

    @classmethod
    def from_dict(cls, d: Mapping[Variable, int]) -> "Monomial":
        return cls._from_sorted(tuple(sorted((v, e) for v, e in d.items() if e)))

    @property
    def exponents(self) -> dict[Variable, int]:
        if self._map is None:
            self._map = dict(self.terms)
        return self._map

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Monomial"):
        # structural order, only for deterministic sorting
        return self.terms < other.terms

    def __bool__(self):
        return True

    def is_one(self) -> bool:
        return not self.terms

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.terms:
            return self
        if not self.terms:
            return other
        d = dict(self.terms)
        for v, e in other.terms:
            d[v] = d.get(v, 0) + e
        return Monomial._from_sorted(tuple(sorted(d.items())))

    def __pow__(self, k: int) -> "Monomial":
        if k < 0:
            raise ValueError("negative power")
        return Monomial._from_sorted(tuple((v, e * k) for v, e in self.terms) if k else ())

    def divides(self, other: "Monomial") -> bool:
        if len(self.terms) > len(other.terms):
            return False
        ex = other.exponents
        return all(ex.get(v, 0) >= e for v, e in self.terms)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        d = dict(self.terms)
        for v, e in other.terms:
            r = d.get(v, 0) - e
            if r < 0:
                raise ValueError(f"{other} does not divide {self}")
            if r:
                d[v] = r
            else:
                del d[v]
        return Monomial._from_sorted(tuple(sorted(d.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.terms)
        for v, e in other.terms:
            if e > d.get(v, 0):
                d[v] = e
        return Monomial._from_sorted(tuple(sorted(d.items())))

    def gcd_is_one(self, other: "Monomial") -> bool:
        ex = other.exponents
        return not any(v in ex for v, _ in self.terms)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.terms)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for v, _ in self.terms for j in v.free)

    @property
    def width(self) -> int:
        return len(self.support)

    @property
    def extent(self) -> int:
        """Largest free index occurring (0 for none)."""
        return max((j for v, _ in self.terms for j in v.free), default=0)

    def variables(self) -> tuple[Variable, ...]:
        return tuple(v for v, _ in self.terms)

    def __str__(self):
        if not self.terms:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.terms)

    def pretty(self) -> str:
        if not self.terms:
            return "1"
        return "*".join(v.pretty() if e == 1 else f"{v.pretty()}^{e}" for v, e in self.terms)

    def __repr__(self):
        return f"Monomial({self})"


ONE = Monomial()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return a * b


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def lcm_mono(a: Monomial, b: Monomial) -> Monomial:
    return a.lcm(b)


# ---------------------------------------------------------------------------
# rings and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over a tuple of symbol schemas and a coefficient field."""

    schemas: tuple[SymbolSchema, ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "schemas", tuple(self.schemas))
        names = [s.name for s in self.schemas]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")

    def schema(self, name: str) -> SymbolSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(f"unknown symbol {name!r}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.schemas)

    def var(self, name: str, *indices: int) -> Variable:
        """Variable from flat indices: fixed indices first, then free ones."""
        s = self.schema(name)
        k = len(s.fixed_bounds)
        fixed, free = tuple(indices[:k]), tuple(indices[k:])
        s.check(fixed, free)
        return Variable(name, fixed, free)

    def check_variable(self, v: Variable) -> None:
        self.schema(v.symbol).check(v.fixed, v.free)

    def mono(self, *factors: tuple) -> Monomial:
        """``ring.mono(("x", 1, 2), ("y", 3, 1, 2))``; a trailing int in a
        factor beyond the index count is not allowed, use repetition or
        :meth:`Monomial.__pow__` for exponents."""
        return Monomial((self.var(name, *idx), 1) for name, *idx in factors)

    def gen(self, name: str, *indices: int) -> "Polynomial":
        return Polynomial(self, {Monomial([(self.var(name, *indices), 1)]): 1})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {ONE: 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {ONE: c})

    def from_terms(self, terms: Iterable[tuple[object, Monomial]]) -> "Polynomial":
        acc: dict[Monomial, Coefficient] = {}
        for c, m in terms:
            for v in m.variables():
                self.check_variable(v)
            acc[m] = acc.get(m, 0) + self.field(c)
        return Polynomial(self, acc)


class Polynomial:
    """Sparse polynomial: a finite map Monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object] = ()):
        self.ring = ring
        conv = ring.field
        clean = {}
        for m, c in dict(terms).items():
            c = conv(c)
            if c:
                clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        # terms already converted and zero-free
        f = cls.__new__(cls)
        f.ring = ring
        f.terms = terms
        f._hash = None
        return f

    def _same_ring(self, other: "Polynomial") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise DomainMismatchError(
                f"polynomials over different rings: {self.ring.field} {self.ring.names}"
                f" vs {other.ring.field} {other.ring.names}"
            )

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._same_ring(other)
            return other
        if isinstance(other, Monomial):
            return Polynomial._raw(self.ring, {other: self.ring.field(1)})
        return self.ring.const(other)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, ModP)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        other = self._lift(other)
        d = dict(self.terms)
        for m, c in other.terms.items():
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return Polynomial._raw(self.ring, d)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, Monomial)):
            return self.scale(other)
        other = self._lift(other)
        d: dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = d.get(m, 0) + c1 * c2
                if s:
                    d[m] = s
                else:
                    d.pop(m, None)
        return Polynomial._raw(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: a * c for m, a in self.terms.items()})

    def mul_term(self, c, m: Monomial) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {t * m: a * c for t, a in self.terms.items()})

    def monomials(self) -> list[Monomial]:
        return list(self.terms)

    def coefficient(self, m: Monomial) -> Coefficient:
        return self.terms.get(m, self.ring.field(0))

    @property
    def support(self) -> frozenset[int]:
        return frozenset().union(*(m.support for m in self.terms)) if self.terms else frozenset()

    @property
    def width(self) -> int:
        return len(self.support)

    @property
    def extent(self) -> int:
        return max((m.extent for m in self.terms), default=0)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=-1)

    def symbols(self) -> frozenset[str]:
        return frozenset(v.symbol for m in self.terms for v in m.variables())

    def substitute(self, images: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Ring map sending each variable to ``images[v]`` (missing ones kept),
        landing in the ring of the images."""
        target = next(iter(images.values())).ring if images else self.ring
        out = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for v, e in m.terms:
                img = images.get(v)
                if img is None:
                    img = Polynomial._raw(target, {Monomial([(v, 1)]): target.field(1)})
                t = t * img**e
            out = out + t
        return out

    def to_text(self, key=None, pretty: bool = False) -> str:
        """Human-readable form; terms sorted descending by ``key`` (default:
        structural order)."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=(lambda t: key(t[0])) if key else (lambda t: t[0].terms), reverse=True)
        parts = []
        for i, (m, c) in enumerate(items):
            cs = str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            ms = m.pretty() if pretty else str(m)
            if m.is_one():
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

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polynomial({self.to_text()})"


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def poly_scale(f: Polynomial, c) -> Polynomial:
    return f.scale(c)
