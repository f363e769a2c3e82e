import json
from fractions import Fraction

import pytest

import pathprice


HIGHWAY = json.dumps(
    {
        "kind": "highway",
        "n": 2,
        "drivers": [
            {"left": 1, "right": 1, "budget": 3},
            {"left": 1, "right": 2, "budget": 5},
        ],
    }
)


def rat(v):
    return Fraction(v)


def test_generate_round_trips():
    doc = json.loads(pathprice.generate(2, 2, 4, seed=3))
    assert doc["kind"] == "highway"
    assert doc["n"] == 2
    assert len(doc["drivers"]) == 2
    assert pathprice.generate(2, 2, 4, seed=3) == pathprice.generate(2, 2, 4, seed=3)


def test_solve_highway():
    report = json.loads(pathprice.solve(HIGHWAY))
    opt = json.loads(pathprice.oracle(HIGHWAY))
    assert rat(report["profit"]) <= rat(opt["opt"])
    # the reported profit is reproducible from the weights
    check = pathprice.profit(HIGHWAY, [str(w) for w in report["weights"]])
    assert rat(check) == rat(report["profit"])


def test_oracle_values():
    opt = json.loads(pathprice.oracle(HIGHWAY))
    assert rat(opt["opt"]) == 8
    assert opt["weights"] == [3, 2]


def test_maxfs():
    inst = json.dumps(
        {
            "kind": "maxfs",
            "n": 1,
            "rows": [{"left": 1, "right": 1, "lower": 0, "upper": 2, "profit": 3}],
        }
    )
    report = json.loads(pathprice.solve(inst))
    assert rat(report["profit"]) == 3
    opt = json.loads(pathprice.oracle(inst, rho="1"))
    assert rat(opt["opt"]) == 3


def test_float_budgets_are_rejected():
    bad = HIGHWAY.replace('"budget": 3', '"budget": 3.5')
    with pytest.raises(ValueError):
        pathprice.solve(bad)


def test_bounds_refusal():
    inst = json.loads(HIGHWAY)
    inst["drivers"][0]["budget"] = 10**6
    with pytest.raises(RuntimeError):
        pathprice.oracle(json.dumps(inst))
