import json
import math
import os
from pathlib import Path

import pytest

import hyperprob as hp

SCENARIOS = Path(os.environ.get("HYPERPROB_SCENARIOS", Path(__file__).resolve().parents[2] / "scenarios"))


def test_arithmetic():
    z = hp.HyperNum.from_cartesian(2, 1)
    assert (z.u, z.v) == (3, 1)
    assert z * hp.HyperNum.from_cartesian(1, 2) == hp.HyperNum.from_cartesian(4, 5)
    assert hp.E * hp.E_DAGGER == hp.ZERO
    assert hp.K ** 2 == hp.ONE
    assert str(z.conjugate()) == "2-1k"
    assert hp.HyperNum.parse("[1,3]") == hp.HyperNum(1, 3)
    inv = hp.inverse(z)
    assert math.isclose((inv * z).u, 1) and math.isclose((inv * z).v, 1)


def test_classification_and_order():
    assert hp.classify("3+3k") == "zero_divisor_e"
    assert hp.classify(1) == "invertible"
    assert hp.compare(hp.E, hp.E_DAGGER) == hp.compare(hp.E_DAGGER, hp.E)
    assert hp.sup_d([hp.E, hp.E_DAGGER]) == hp.ONE
    assert hp.ball_contains(0, hp.E, 0.5 * hp.E)
    assert not hp.ball_contains(0, hp.E, 0.5 * hp.E_DAGGER)


def test_errors_are_python_exceptions():
    with pytest.raises(hp.HyperprobError):
        hp.inverse(hp.E)
    with pytest.raises(ValueError):
        hp.HyperNum.parse("2+k+")


def test_scenario_quantities():
    s = hp.Scenario.load(SCENARIOS / "coverage.json")
    assert len(s.outcomes) == 6
    assert set(s.variables) >= {"X", "Y"}
    mean = s.expectation("X")
    assert mean == s.moment("X", 1)
    assert s.mgf("X", 0) == hp.ONE
    # Keys pair every X1 value with every X2 value; each marginal sums to 1.
    f1, f2 = {}, {}
    for z, p in s.pmf("X"):
        f1[z.u], f2[z.v] = p.u, p.v
    assert math.isclose(sum(f1.values()), 1) and math.isclose(sum(f2.values()), 1)
    assert s.oracle_residual("thm82") < 1e-9


def test_distributions():
    assert hp.dist_pmf("binomial", "[1,0]", {"n1": 2, "n2": 1}) == hp.HyperNum.real(0.5)
    assert math.isclose(hp.dist_pmf("poisson", 0).u, math.exp(-1))
    assert hp.dist_mean("bernoulli", {"p1": 0.5, "p2": 0.25}) == hp.HyperNum(0.5, 0.25)
    d = [hp.binomial_poisson_distance(n, 2, 2) for n in (10, 50, 250)]
    assert d[0] > d[1] > d[2] and d[2] < 0.02


def test_suite_is_deterministic():
    s = hp.Scenario.load(SCENARIOS / "minimal.json")
    a = hp.run_suite(s, "measure", seed=3)
    b = hp.run_suite(s, "measure", seed=3, parallel=True)
    assert a["passed"]
    assert a["text"] == b["text"]
    assert json.loads(a["json"])["suite"] == "measure"
