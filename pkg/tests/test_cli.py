import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from incgb import io as pio
from incgb.algebra import GF, Ring, SymbolSchema
from incgb.cli import main
from incgb.engine import EngineConfig
from incgb.orders import OrderSpec, random_monomial
from incgb.problems import onefactor_generators, onefactor_ring


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, doc, name="p.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


def onefactor_doc():
    return json.loads(pio.resolve("onefactor").read_text())


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def test_round_trip_bundled():
    for name in ("onefactor", "onefactor-elim", "onefactor-member", "rowlex-smoke", "segre-k2"):
        pf = pio.load(name)
        assert pio.loads(pio.dumps(pf)) == pf


RING = Ring(
    (SymbolSchema("x", (2,), 1), SymbolSchema("y", (), 2, "decreasing"), SymbolSchema("c", (), 0)),
    GF(13),
)


@given(st.integers(0, 2**32 - 1))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    gens = []
    for _ in range(rng.randint(0, 3)):
        f = RING.from_terms(
            (rng.choice(["1/2", -3, 5]), random_monomial(RING, rng)) for _ in range(rng.randint(1, 4))
        )
        if f:
            gens.append(f)
    order = rng.choice(["rowlex", OrderSpec(("y", "c", "x"), graded=True)])
    cfg = EngineConfig(rng.choice([None, 5]), rng.choice([None, 7]), None, rng.random() < 0.5)
    pf = pio.ProblemFile(RING, order, gens, cfg, target=gens[0] if gens else None)
    assert pio.loads(pio.dumps(pf)) == pf


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.pop("ring"), "missing field 'ring'"),
        (lambda d: d["ring"][1].update(constraint="odd"), "ring[1]"),
        (lambda d: d.update(order="deglex"), "order: unknown preset"),
        (lambda d: d.update(field={"kind": "prime", "p": 4}), "field.p"),
        (lambda d: d["generators"][0][0]["factors"][0].update(free=[1, 2]), "generators[0][0].factors[0]"),
        (lambda d: d["generators"][0][0]["factors"][0].update(symbol="z"), "unknown symbol 'z'"),
        (lambda d: d["generators"][0][1].update(coefficient="1/0"), "generators[0][1].coefficient"),
        (lambda d: d["generators"][0][1].update(coefficient=1.5), "generators[0][1].coefficient"),
        (lambda d: d["config"].update(max_steps=0), "config.max_steps"),
        (lambda d: d["config"].update(bogus=1), "config: unknown fields"),
    ],
)
def test_parse_errors_name_the_field(mutate, fragment):
    doc = onefactor_doc()
    mutate(doc)
    with pytest.raises(pio.ProblemError) as e:
        pio.problem_from_dict(doc)
    assert fragment in str(e.value)


def test_json_syntax_error_reports_line():
    with pytest.raises(pio.ProblemError, match="line 2 column"):
        pio.loads('{\n  "ring": [,]\n}')


def test_pretty_printer(of_ring, of_order):
    y = lambda i, j: of_ring.gen("y", i, j)
    f = y(4, 3) * y(2, 1) - y(4, 1) * y(3, 2)
    assert pio.format_polynomial(f, of_order, pretty=True) == "y43*y21 - y41*y32"
    assert pio.format_polynomial(f, of_order) == "y[4,3]*y[2,1] - y[4,1]*y[3,2]"
    g = of_ring.gen("x", 12) * of_ring.const(-2) + of_ring.const("1/3")
    assert pio.format_polynomial(g, of_order, pretty=True) == "-2*x_{12} + 1/3"
    assert pio.format_polynomial(of_ring.zero(), of_order) == "0"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def test_gb_onefactor(capsys, tmp_path):
    code, out, _ = run(capsys, "gb", "onefactor", "--pretty")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "complete"
    texts = [b["text"] for b in doc["basis"]]
    assert len(texts) == 6
    assert "y43*y21 - y41*y32" in texts and "x2*x1 - y21" in texts
    dest = tmp_path / "out.json"
    assert run(capsys, "gb", "onefactor", "--pretty", "--output", dest)[0] == 0
    assert dest.read_text() == out


def test_gb_keep(capsys):
    code, out, _ = run(capsys, "gb", "onefactor", "--keep", "y", "--pretty")
    assert code == 0
    assert [b["text"] for b in json.loads(out)["elimination"]] == ["y42*y31 - y41*y32", "y43*y21 - y41*y32"]
    assert run(capsys, "gb", "onefactor", "--keep", "x")[0] == 1


def test_gb_empty(capsys, tmp_path):
    doc = onefactor_doc()
    doc["generators"] = []
    code, out, _ = run(capsys, "gb", write(tmp_path, doc))
    assert code == 0
    assert json.loads(out)["basis"] == []


def test_gb_budget(capsys):
    code, out, _ = run(capsys, "gb", "onefactor", "--max-steps", "1")
    assert code == 2
    doc = json.loads(out)
    assert doc["status"] == "budget-exhausted" and doc["basis"]


def test_gb_deterministic(capsys):
    a = run(capsys, "gb", "rowlex-smoke")[1]
    b = run(capsys, "gb", "rowlex-smoke", "--no-product-criterion")[1]
    c = run(capsys, "gb", "rowlex-smoke")[1]
    assert a == c
    assert json.loads(a)["basis"] == json.loads(b)["basis"]


def test_gb_overrides(capsys):
    code, out, _ = run(capsys, "gb", "onefactor", "--field", "prime:101", "--order", '{"precedence": ["x", "y"]}')
    assert code == 0 and len(json.loads(out)["basis"]) == 6
    assert run(capsys, "gb", "onefactor", "--field", "prime:100")[0] == 1
    assert run(capsys, "gb", "onefactor", "--order", "nope")[0] == 1
    assert run(capsys, "gb", "onefactor", "--order", '{"precedence": ["x"]}')[0] == 1


def test_invalid_inputs(capsys, tmp_path):
    code, _, err = run(capsys, "gb", tmp_path / "missing.json")
    assert code == 1 and "no such problem file" in err
    code, _, err = run(capsys, "gb", write(tmp_path, "{oops"))
    assert code == 1 and "line 1" in err
    doc = onefactor_doc()
    doc["generators"][0][0]["factors"][0]["free"] = [1, 2]
    code, _, err = run(capsys, "gb", write(tmp_path, doc))
    assert code == 1 and "generators[0][0].factors[0]" in err
    assert run(capsys, "frobnicate")[0] == 1


def target(*factors_list, coefficients=None):
    coefficients = coefficients or [1] * len(factors_list)
    return json.dumps(
        [
            {"coefficient": str(c), "factors": [{"symbol": "y", "free": list(f), "exponent": 1} for f in fs]}
            for c, fs in zip(coefficients, factors_list)
        ]
    )


def test_member(capsys):
    assert run(capsys, "member", "onefactor-member") == (0, "true\n", "")
    code, out, _ = run(capsys, "member", "onefactor", "--target", target([(2, 1)]))
    assert (code, out) == (3, "false\n")
    assert run(capsys, "member", "onefactor", "--target", "[]")[:2] == (0, "true\n")
    assert run(capsys, "member", "onefactor")[0] == 1


def test_member_budget(capsys):
    code, out, _ = run(capsys, "member", "onefactor", "--max-steps", "1", "--target", target([(2, 1)]))
    assert (code, out) == (2, "unknown\n")


def test_reduce(capsys, tmp_path):
    code, out, _ = run(
        capsys, "reduce", "onefactor", "--pretty", "--target", target([(5, 4), (2, 1)], [(2, 1)], coefficients=[1, 1])
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["remainder"] == "y51*y42 + y21"
    assert doc["certificate"][0]["witness"] == {"1": 1, "2": 2, "3": 4, "4": 5}


def test_reduce_with_given_basis(capsys, tmp_path):
    doc = onefactor_doc()
    R = onefactor_ring()
    doc["basis"] = [pio.polynomial_to_terms(g) for g in onefactor_generators(R)]
    doc["target"] = json.loads(target([(2, 1)]))
    code, out, _ = run(capsys, "reduce", write(tmp_path, doc), "--pretty")
    assert code == 0 and json.loads(out)["remainder"] == "y21"


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "onefactor-elim", "--width", "5")
    assert code == 0 and json.loads(out)["count"] == 10
    assert run(capsys, "expand", "onefactor-elim", "--width", "3")[0] == 1


def test_verify(capsys):
    assert run(capsys, "verify", "onefactor", "--width", "4") == (0, "true\n", "")
    assert run(capsys, "verify", "onefactor", "--width", "4", "--max-steps", "1")[0] == 2


def test_verify_false(capsys, tmp_path):
    doc = onefactor_doc()
    R = onefactor_ring()
    # a wrong basis: only the generator's leading part
    doc["basis"] = [pio.polynomial_to_terms(R.gen("x", 2) * R.gen("x", 1))]
    assert run(capsys, "verify", write(tmp_path, doc), "--width", "3") == (3, "false\n", "")


def test_wpo_commands(capsys, tmp_path):
    assert run(capsys, "wpo", "kruskal", "single-node-vs-bigger-tree") == (0, "true\n", "")
    assert run(capsys, "wpo", "pidivides", "cycles") == (3, "false\n", "")
    p = write(tmp_path, {"left": [1, 2], "right": [1, 3]})
    assert run(capsys, "wpo", "dickson", p)[:2] == (0, "true\n")
    p = write(tmp_path, {"poset": {"chain": 3}, "left": [1, 2], "right": [2, 2]})
    assert run(capsys, "wpo", "multiset", p)[:2] == (0, "true\n")
    p = write(tmp_path, {"poset": {"antichain": 3}, "left": [1, 2], "right": [2, 1]})
    assert run(capsys, "wpo", "higman", p)[:2] == (3, "false\n")
    p = write(tmp_path, {"poset": {"chain": 2}, "left": [5], "right": [1]})
    assert run(capsys, "wpo", "higman", p)[0] == 1
    doc = json.loads(pio.resolve("cycles").read_text())
    doc["right"] = doc["left"]
    code, out, _ = run(capsys, "wpo", "pidivides", write(tmp_path, doc))
    assert code == 0 and out == "true\nwitness {1->1, 2->2, 3->3}\n"
