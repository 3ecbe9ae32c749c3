"""Acceptance criteria, one test each.

Every test records a single ``criterion N: PASS/FAIL - detail`` line; the
lines are repeated in the pytest terminal summary.
"""

import json
import os
import random
import subprocess
import sys
import time
from collections import Counter
from itertools import combinations_with_replacement, product

import pytest

from incgb import io as pio
from incgb import reproduce
from incgb.cli import main as cli_main
from incgb.engine import Basis, criterion_failures, extract_elimination, reduce
from incgb.finite import (
    TruncatedRing,
    orbit_expand,
    same_ideal,
    segre_quadrics,
    segre_ring,
    segre_substitution,
)
from incgb.orders import LESS, check_compatibility, preset, random_monomial, random_witness
from incgb.problems import cycle_monomial, cycle_ring, onefactor_reference_basis, onefactor_ring, rowlex_ring
from incgb.symmetry import apply, canonicalize_poly
from incgb.wpo import (
    LabelledTree,
    PosetTable,
    brute_dickson_leq,
    brute_higman_leq,
    brute_kruskal_leq,
    brute_multiset_leq,
    dickson_leq,
    higman_leq,
    kruskal_leq,
    multiset_leq,
    pi_divides,
)


@pytest.fixture(scope="module")
def onefactor_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("gb") / "onefactor.json"
    t0 = time.perf_counter()
    code = cli_main(["gb", "onefactor", "--output", str(out)])
    elapsed = time.perf_counter() - t0
    pf = pio.load("onefactor")
    doc = json.loads(out.read_text())
    basis = [pio.parse_polynomial(b["terms"], pf.ring, "basis") for b in doc["basis"]]
    return code, elapsed, doc, Basis(basis, pf.order_spec(), pf.ring), pf


def _pretty_set(monos):
    return {m.pretty() for m in monos}


def test_criterion_1_onefactor(onefactor_run, report):
    code, elapsed, doc, B, pf = onefactor_run
    ref = Basis(onefactor_reference_basis(pf.ring), B.order, pf.ring)
    ref_in = all(not reduce(g, B)[0] for g in ref)
    ours_in = all(not reduce(g, ref)[0] for g in B)
    lms = B.canonical_leading_monomials()
    expected = {"x1*x2", "x3*y21", "x2*y31", "x1^2*y32", "y21*y43", "y31*y42"}
    ok = (
        code == 0
        and doc["status"] == "complete"
        and elapsed < 60
        and ref_in
        and ours_in
        and lms == ref.canonical_leading_monomials()
        and _pretty_set(lms) == expected
    )
    report(
        1,
        ok,
        f"status {doc['status']} in {elapsed:.2f}s, {len(B)} elements; reference in ideal: {ref_in}, "
        f"basis in reference ideal: {ours_in}; canonical lm set {sorted(_pretty_set(lms))}",
    )
    assert ok


def _normalized(f):
    g, _ = canonicalize_poly(f)
    return g if g.terms[max(g.terms, key=lambda m: sorted(m.terms))] > 0 else -g


def test_criterion_2_elimination(onefactor_run, report):
    _, _, _, B, pf = onefactor_run
    elim = extract_elimination(B, {"y"})
    ref = onefactor_reference_basis(pf.ring)[5:]
    got = {_normalized(g) for g in elim}
    want = {_normalized(g) for g in ref}
    ok = got == want and len(elim) == 2
    report(2, ok, f"kept y: {[pio.format_polynomial(g, B.order, True) for g in elim]}")
    assert ok


def test_criterion_3_audit(onefactor_run, report):
    _, _, _, B, _ = onefactor_run
    t0 = time.perf_counter()
    bad = criterion_failures(B)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    report(3, ok, f"{len(bad)} nonzero remainders over all pairs and self-pairs, {elapsed:.2f}s")
    assert ok


def test_criterion_4_truncation(onefactor_run, report):
    _, _, _, B, pf = onefactor_run
    widths = {}
    for n in (2, 3, 4, 5):
        tr = TruncatedRing(pf.ring, n)
        widths[n] = same_ideal(orbit_expand(B.elements, n, drop_wider=True), orbit_expand(pf.generators, n), tr, B.order)
    rows = reproduce.random_truncation_rows(width=4)
    completed = [r for r in rows if r["status"] == "complete"]
    failed = [r["seed"] for r in completed if not r["same_ideal"]]
    ok = all(widths.values()) and not failed
    report(
        4,
        ok,
        f"one-factor widths 2..5: {widths}; random: {len(completed)}/{len(rows)} completed, "
        f"width-4 equivalence fails for seeds {failed}",
    )
    assert ok


def test_criterion_5_segre(report):
    R = segre_ring(2)
    quads = segre_quadrics(2, R)
    expanded = orbit_expand(quads, 4)
    nonzero = [q for q in expanded if segre_substitution(q, 2)]
    ok = bool(expanded) and not nonzero
    report(5, ok, f"{len(quads)} representatives, {len(expanded)} quadrics at width 4, {len(nonzero)} nonzero images")
    assert ok


# ---------------------------------------------------------------------------
# criterion 6
# ---------------------------------------------------------------------------

# the five 3-element posets up to isomorphism; smaller posets occur as
# induced subposets, and every label subset is enumerated below
POSETS3 = {
    "antichain": PosetTable.antichain(3),
    "chain": PosetTable.chain(3),
    "one relation": PosetTable.from_relations(3, [(0, 1)]),
    "V": PosetTable.from_relations(3, [(0, 1), (0, 2)]),
    "wedge": PosetTable.from_relations(3, [(1, 0), (2, 0)]),
}
BUDGET = 300.0


def labelled_trees(max_size: int, labels) -> list[list[LabelledTree]]:
    """All rooted unordered labelled trees, grouped by size, up to isomorphism."""
    by_size: list[list[LabelledTree]] = [[] for _ in range(max_size + 1)]
    for n in range(1, max_size + 1):
        seen = set()
        for forest in _forests(n - 1, by_size):
            for lab in labels:
                t = LabelledTree(lab, forest)
                if t not in seen:
                    seen.add(t)
                    by_size[n].append(t)
    return by_size


def _forests(total: int, by_size):
    if total == 0:
        yield ()
        return
    pool = [t for s in range(1, total + 1) for t in by_size[s]]

    def rec(remaining, start):
        if remaining == 0:
            yield ()
            return
        for i in range(start, len(pool)):
            t = pool[i]
            if t.size <= remaining:
                for rest in rec(remaining - t.size, i):
                    yield (t,) + rest

    yield from rec(total, 0)


def _level_pairs(level, by_size):
    """Tree pairs whose larger tree has exactly ``level`` vertices."""
    top = by_size[level]
    below = [t for s in range(1, level) for t in by_size[s]]
    for a in top:
        for b in below + top:
            yield a, b
    for a in below:
        for b in top:
            yield a, b


def _kruskal_level(level, by_size, counts, mismatches, t0) -> bool:
    for name, P in POSETS3.items():
        for a, b in _level_pairs(level, by_size):
            if time.perf_counter() - t0 > BUDGET:
                return False
            counts["kruskal"] += 1
            if kruskal_leq(a, b, P) != brute_kruskal_leq(a, b, P):
                mismatches.append(("kruskal", name, a, b))
    return True


def test_criterion_6_wpo_oracles(report):
    t0 = time.perf_counter()
    mismatches = []
    counts = Counter()

    vecs = [v for n in range(6) for v in product(range(3), repeat=n)]
    for a in vecs:
        for b in vecs:
            if len(a) == len(b):
                counts["dickson"] += 1
                if dickson_leq(a, b) != brute_dickson_leq(a, b):
                    mismatches.append(("dickson", a, b))

    multisets = [m for n in range(5) for m in combinations_with_replacement(range(3), n)]
    seqs = [s for n in range(6) for s in product(range(3), repeat=n)]
    for name, P in POSETS3.items():
        for a in multisets:
            for b in multisets:
                counts["multiset"] += 1
                if multiset_leq(a, b, P) != brute_multiset_leq(a, b, P):
                    mismatches.append(("multiset", name, a, b))
        for a in seqs:
            for b in seqs:
                counts["higman"] += 1
                if higman_leq(a, b, P) != brute_higman_leq(a, b, P):
                    mismatches.append(("higman", name, a, b))
    seq_time = time.perf_counter() - t0

    by_size = labelled_trees(6, range(3))
    n_trees = sum(len(x) for x in by_size)
    total_pairs = n_trees * n_trees * len(POSETS3)
    complete_through = 0
    timed_out = False
    for level in range(1, 7):
        if not _kruskal_level(level, by_size, counts, mismatches, t0):
            timed_out = True
            break
        complete_through = level
    elapsed = time.perf_counter() - t0
    ok = not mismatches and not timed_out and elapsed < BUDGET
    report(
        6,
        ok,
        f"dickson {counts['dickson']}, multiset {counts['multiset']}, higman {counts['higman']} instances "
        f"in {seq_time:.1f}s; kruskal {counts['kruskal']} of {total_pairs} tree pairs "
        f"({n_trees} trees with <= 6 vertices, 5 posets), complete through size {complete_through}"
        f"{', stopped at the time limit' if timed_out else ''}; {len(mismatches)} disagreements; {elapsed:.1f}s",
    )
    assert not mismatches
    assert ok


# ---------------------------------------------------------------------------
# criteria 7-9
# ---------------------------------------------------------------------------


def test_criterion_7_cycles(report):
    C = cycle_ring()
    cyc = {m: cycle_monomial(m, C) for m in range(2, 7)}
    wrong = []
    for m in cyc:
        w = pi_divides(cyc[m], cyc[m])
        if w is None or not apply(w, cyc[m]).divides(cyc[m]):
            wrong.append((m, m))
        for l in cyc:
            if m != l and pi_divides(cyc[m], cyc[l]) is not None:
                wrong.append((m, l))
    ok = not wrong
    report(7, ok, f"20 ordered distinct pairs none, 5 self pairs with witness; violations {wrong}")
    assert ok


def test_criterion_8_compatibility(report):
    t0 = time.perf_counter()
    rings = {"rowlex": rowlex_ring(2), "elim-onefactor": onefactor_ring()}
    reports = {name: check_compatibility(preset(name, R), R, samples=100_000, seed=8) for name, R in rings.items()}
    failures = Counter()
    rng = random.Random(8)
    for name, R in rings.items():
        spec = preset(name, R)
        for _ in range(10_000):
            u, v = random_monomial(R, rng), random_monomial(R, rng)
            sigma = random_witness(u.support | v.support, rng)
            pi = random_witness(set(sigma.targets), rng)
            if apply(pi.compose(sigma), u) != apply(pi, apply(sigma, u)):
                failures["monoid"] += 1
            if apply(sigma, u * v) != apply(sigma, u) * apply(sigma, v):
                failures["product"] += 1
            if apply(sigma, u.lcm(v)) != apply(sigma, u).lcm(apply(sigma, v)):
                failures["lcm"] += 1
            if spec.compare(apply(sigma, u), u) == LESS:
                failures["pi u >= u"] += 1
    elapsed = time.perf_counter() - t0
    ok = all(reports.values()) and not failures
    report(
        8,
        ok,
        f"compatibility 1e5 samples: {{{', '.join(f'{k}: {bool(r)}' for k, r in reports.items())}}}; "
        f"action properties 1e4 samples per ring, failures {dict(failures)}; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_9_determinism(report):
    outs = []
    for hashseed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        proc = subprocess.run(
            [sys.executable, "-m", "incgb.reproduce"], capture_output=True, env=env, check=True
        )
        outs.append(proc.stdout)
    ok = outs[0] == outs[1] and len(outs[0]) > 0
    report(9, ok, f"two runs of criteria 1-5 documents, {len(outs[0])} bytes each, identical: {outs[0] == outs[1]}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rA"]))
