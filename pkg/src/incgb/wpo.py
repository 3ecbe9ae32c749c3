"""Decision procedures for the classical well-partial-orders and for
divisibility up to Inc(N).

Every fast oracle has a ``brute_*`` counterpart that enumerates all candidate
maps; those exist for testing and are exponential.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, Hashable, Optional, Sequence

from .algebra import Monomial, Variable
from .symmetry import IncWitness, apply

Leq = Callable[[Hashable, Hashable], bool]


class LabelError(ValueError):
    pass


class PosetTable:
    """A finite poset on ``{0, ..., n-1}`` given by its ``<=`` table.

    Instances are callable as ``poset(a, b)`` meaning ``a <= b``.
    """

    __slots__ = ("size", "leq")

    def __init__(self, leq: Sequence[Sequence[bool]]):
        n = len(leq)
        table = tuple(tuple(bool(x) for x in row) for row in leq)
        if any(len(row) != n for row in table):
            raise ValueError("leq table must be square")
        for a in range(n):
            if not table[a][a]:
                raise ValueError(f"not reflexive at {a}")
            for b in range(n):
                if a != b and table[a][b] and table[b][a]:
                    raise ValueError(f"not antisymmetric at {a},{b}")
                for c in range(n):
                    if table[a][b] and table[b][c] and not table[a][c]:
                        raise ValueError(f"not transitive at {a},{b},{c}")
        self.size = n
        self.leq = table

    @classmethod
    def chain(cls, n: int) -> "PosetTable":
        return cls([[a <= b for b in range(n)] for a in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "PosetTable":
        return cls([[a == b for b in range(n)] for a in range(n)])

    @classmethod
    def from_relations(cls, n: int, pairs) -> "PosetTable":
        """Reflexive-transitive closure of the given ``(a, b)`` meaning a <= b."""
        t = [[a == b for b in range(n)] for a in range(n)]
        for a, b in pairs:
            t[a][b] = True
        for k in range(n):
            for a in range(n):
                for b in range(n):
                    t[a][b] = t[a][b] or (t[a][k] and t[k][b])
        return cls(t)

    def __call__(self, a: int, b: int) -> bool:
        if not (isinstance(a, int) and isinstance(b, int) and 0 <= a < self.size and 0 <= b < self.size):
            raise LabelError(f"labels {a!r}, {b!r} outside poset of size {self.size}")
        return self.leq[a][b]

    def __eq__(self, other):
        return isinstance(other, PosetTable) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self):
        return f"PosetTable({[list(r) for r in self.leq]})"


# ---------------------------------------------------------------------------
# Dickson
# ---------------------------------------------------------------------------


def dickson_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def brute_dickson_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Search for a nonnegative ``w`` with ``a + w == b``."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    for w in product(*(range(max(y, 0) + 1) for y in b)):
        if all(x + d == y for x, d, y in zip(a, w, b)):
            return True
    return False


# ---------------------------------------------------------------------------
# bipartite matching
# ---------------------------------------------------------------------------


def _perfect_left_matching(n_left: int, n_right: int, edge: Callable[[int, int], bool]) -> bool:
    """Whether every left vertex can be matched (augmenting paths)."""
    if n_left > n_right:
        return False
    adj = [[j for j in range(n_right) if edge(i, j)] for i in range(n_left)]
    owner = [-1] * n_right

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if owner[j] < 0 or augment(owner[j], seen):
                    owner[j] = i
                    return True
        return False

    return all(augment(i, [False] * n_right) for i in range(n_left))


# ---------------------------------------------------------------------------
# multisets
# ---------------------------------------------------------------------------


def _elements(ms) -> list:
    if isinstance(ms, Counter):
        return list(ms.elements())
    return list(ms)


def multiset_leq(A, B, poset: Leq) -> bool:
    """``A <= B`` iff some injection ``f: A -> B`` has ``a <= f(a)``.

    Multisets are given as sequences (repetition = multiplicity) or Counters.
    """
    a, b = _elements(A), _elements(B)
    for x in a + b:
        poset(x, x)
    return _perfect_left_matching(len(a), len(b), lambda i, j: poset(a[i], b[j]))


def brute_multiset_leq(A, B, poset: Leq) -> bool:
    a, b = _elements(A), _elements(B)
    for x in a + b:
        poset(x, x)
    return any(all(poset(x, y) for x, y in zip(a, img)) for img in permutations(b, len(a)))


# ---------------------------------------------------------------------------
# Higman
# ---------------------------------------------------------------------------


def higman_embedding(s: Sequence, t: Sequence, leq: Leq) -> Optional[tuple[int, ...]]:
    """Greedy leftmost embedding: positions (0-based) in ``t``, or None."""
    pos = []
    j = 0
    for x in s:
        while j < len(t) and not leq(x, t[j]):
            j += 1
        if j == len(t):
            return None
        pos.append(j)
        j += 1
    return tuple(pos)


def higman_leq(s: Sequence, t: Sequence, leq: Leq) -> bool:
    for x in list(s) + list(t):
        leq(x, x)
    return higman_embedding(s, t, leq) is not None


def brute_higman_leq(s: Sequence, t: Sequence, leq: Leq) -> bool:
    for x in list(s) + list(t):
        leq(x, x)
    return any(all(leq(x, t[j]) for x, j in zip(s, pos)) for pos in combinations(range(len(t)), len(s)))


# ---------------------------------------------------------------------------
# Kruskal
# ---------------------------------------------------------------------------


class LabelledTree:
    """Finite rooted tree with hashable labels; children are unordered.

    Children are stored in a canonical structural order so isomorphic trees
    compare equal and share memo entries.
    """

    __slots__ = ("label", "children", "_key", "_hash", "size")

    def __init__(self, label, children: Sequence["LabelledTree"] = ()):
        self.label = label
        kids = sorted(children, key=lambda c: c._key)
        self.children = tuple(kids)
        self._key = (repr(label), tuple(c._key for c in kids))
        self._hash = hash(self._key)
        self.size = 1 + sum(c.size for c in kids)

    def __eq__(self, other):
        return isinstance(other, LabelledTree) and self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def vertices(self) -> list["LabelledTree"]:
        out = [self]
        for c in self.children:
            out.extend(c.vertices())
        return out

    def labels(self) -> list:
        return [v.label for v in self.vertices()]

    @classmethod
    def path(cls, labels: Sequence) -> "LabelledTree":
        """Root labelled ``labels[0]`` with a single chain below it."""
        t = None
        for lab in reversed(labels):
            t = cls(lab, [t] if t is not None else [])
        return t

    @classmethod
    def from_obj(cls, obj) -> "LabelledTree":
        if isinstance(obj, dict):
            return cls(obj["label"], [cls.from_obj(c) for c in obj.get("children", [])])
        label, *kids = obj
        return cls(label, [cls.from_obj(c) for c in kids])

    def to_obj(self) -> dict:
        return {"label": self.label, "children": [c.to_obj() for c in self.children]}

    def __repr__(self):
        if not self.children:
            return f"T({self.label!r})"
        return f"T({self.label!r}, {list(self.children)!r})"


def kruskal_leq(T: LabelledTree, T2: LabelledTree, poset: Leq) -> bool:
    for x in T.labels() + T2.labels():
        poset(x, x)

    @lru_cache(maxsize=None)
    def at_vertex(a: LabelledTree, b: LabelledTree) -> bool:
        # a's root goes to b's root, branches of a into distinct branches of b
        if not poset(a.label, b.label) or a.size > b.size:
            return False
        return _perfect_left_matching(
            len(a.children), len(b.children), lambda i, j: embeds(a.children[i], b.children[j])
        )

    @lru_cache(maxsize=None)
    def embeds(a: LabelledTree, b: LabelledTree) -> bool:
        if a.size > b.size:
            return False
        return at_vertex(a, b) or any(embeds(a, c) for c in b.children)

    return embeds(T, T2)


def _flatten(t: LabelledTree):
    labels, parent = [], []

    def walk(node, p):
        i = len(labels)
        labels.append(node.label)
        parent.append(p)
        for c in node.children:
            walk(c, i)

    walk(t, -1)
    return labels, parent


def _ancestors(parent: list[int]) -> list[list[int]]:
    out = []
    for i in range(len(parent)):
        chain = [i]
        while parent[chain[-1]] >= 0:
            chain.append(parent[chain[-1]])
        out.append(chain)
    return out


def _meet(anc: list[list[int]], u: int, w: int) -> int:
    s = set(anc[w])
    return next(a for a in anc[u] if a in s)


def brute_kruskal_leq(T: LabelledTree, T2: LabelledTree, poset: Leq) -> bool:
    """Search all injective vertex maps for a label-dominating one that
    preserves meets (nearest common ancestors)."""
    la, pa = _flatten(T)
    lb, pb = _flatten(T2)
    for x in la + lb:
        poset(x, x)
    anc_a, anc_b = _ancestors(pa), _ancestors(pb)
    n = len(la)
    meets_a = [[_meet(anc_a, u, w) for w in range(n)] for u in range(n)]
    meets_b = [[_meet(anc_b, u, w) for w in range(len(lb))] for u in range(len(lb))]
    for img in permutations(range(len(lb)), n):
        if not all(poset(la[i], lb[img[i]]) for i in range(n)):
            continue
        if all(img[meets_a[u][w]] == meets_b[img[u]][img[w]] for u in range(n) for w in range(u + 1, n)):
            return True
    return False


# ---------------------------------------------------------------------------
# divisibility up to Inc(N)
# ---------------------------------------------------------------------------


def _profiles(m: Monomial) -> dict[int, Counter]:
    """Per free index: exponent mass by (symbol, fixed, position)."""
    prof: dict[int, Counter] = {}
    for v, e in m.terms:
        for pos, j in enumerate(v.free):
            prof.setdefault(j, Counter())[(v.symbol, v.fixed, pos)] += e
    return prof


def _dominated(small: Counter, big: Counter) -> bool:
    return all(big.get(k, 0) >= c for k, c in small.items())


def _quick_reject(u: Monomial, v: Monomial) -> bool:
    if u.degree > v.degree:
        return True
    cu, cv = Counter(), Counter()
    for w, e in u.terms:
        cu[(w.symbol, w.fixed)] += e
    for w, e in v.terms:
        cv[(w.symbol, w.fixed)] += e
    return not _dominated(cu, cv)


def pi_divides(u: Monomial, v: Monomial) -> Optional[IncWitness]:
    """A witness ``pi`` on ``support(u)`` with ``apply(pi, u) | v``, or None.

    Among all witnesses the one with lexicographically smallest image tuple
    is returned.
    """
    return _pi_divides(u, v)


@lru_cache(maxsize=1 << 16)
def _pi_divides(u: Monomial, v: Monomial) -> Optional[IncWitness]:
    if u.is_one():
        return IncWitness(())
    if _quick_reject(u, v):
        return None
    if all(len(w.free) <= 1 for w, _ in u.terms):
        return pi_divides_word(u, v)
    return pi_divides_search(u, v)


def _fixed_part_divides(u: Monomial, v: Monomial) -> bool:
    ex = v.exponents
    return all(ex.get(w, 0) >= e for w, e in u.terms if not w.free)


def word_encoding(m: Monomial, length: Optional[int] = None) -> list[Counter]:
    """Letter ``j`` collects the exponents of the arity-one variables with
    free index ``j``, keyed by ``(symbol, fixed)``."""
    n = m.extent if length is None else length
    word = [Counter() for _ in range(n)]
    for w, e in m.terms:
        if len(w.free) == 1:
            word[w.free[0] - 1][(w.symbol, w.fixed)] += e
        elif len(w.free) > 1:
            raise ValueError(f"{w} has free arity {len(w.free)}; word encoding needs arity <= 1")
    return word


def pi_divides_word(u: Monomial, v: Monomial) -> Optional[IncWitness]:
    """Divisibility for arity <= 1 via greedy Higman embedding of words."""
    if not _fixed_part_divides(u, v):
        return None
    su = word_encoding(u)
    sv = [Counter() for _ in range(v.extent)]
    for w, e in v.terms:
        if len(w.free) == 1:
            sv[w.free[0] - 1][(w.symbol, w.fixed)] += e
    pos = higman_embedding(su, sv, _dominated)
    if pos is None:
        return None
    supp = u.support
    return IncWitness(tuple((j + 1, pos[j] + 1) for j in range(len(su)) if j + 1 in supp))


def pi_divides_search(u: Monomial, v: Monomial) -> Optional[IncWitness]:
    """Backtracking over increasing injections ``support(u) -> support(v)``
    that extend to Inc(N), in lexicographic order of image tuples."""
    if not _fixed_part_divides(u, v):
        return None
    src = sorted(u.support)
    tgt = sorted(v.support)
    if len(src) > len(tgt):
        return None
    pu, pv = _profiles(u), _profiles(v)
    vex = v.exponents
    # variables of u become checkable once their largest free index is mapped
    due: dict[int, list[tuple[Variable, int]]] = {}
    for w, e in u.terms:
        if w.free:
            due.setdefault(max(w.free), []).append((w, e))
    k = len(src)
    image: dict[int, int] = {}

    def rec(i: int, start: int) -> bool:
        if i == k:
            return True
        s = src[i]
        # targets must leave room for the remaining sources
        for ti in range(start, len(tgt) - (k - i) + 1):
            t = tgt[ti]
            if t < s:
                continue
            if i and t - image[src[i - 1]] < s - src[i - 1]:
                continue
            if not _dominated(pu[s], pv.get(t, Counter())):
                continue
            image[s] = t
            ok = True
            for w, e in due.get(s, ()):
                if vex.get(Variable(w.symbol, w.fixed, tuple(image[j] for j in w.free)), 0) < e:
                    ok = False
                    break
            if ok and rec(i + 1, ti + 1):
                return True
            del image[s]
        return False

    if not rec(0, 0):
        return None
    return IncWitness(tuple((s, image[s]) for s in src))


def brute_pi_divides(u: Monomial, v: Monomial) -> Optional[IncWitness]:
    """First witness in lexicographic image order, by plain enumeration of
    extendable increasing maps into ``[extent(v)]``."""
    from .symmetry import increasing_maps

    for pi in increasing_maps(u.support, max(v.extent, 0)):
        if apply(pi, u).divides(v):
            return pi
    return None
