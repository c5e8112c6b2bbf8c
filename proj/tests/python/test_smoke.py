import os
from fractions import Fraction
from pathlib import Path

import pytest

import collsched as cs

DATA = Path(os.environ.get("COLLSCHED_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


def three_jobs():
    return cs.Profile([20, 5, 1], [[0, 2, 1], [1, 0, 2]])


def five_agents():
    return cs.Profile([1, 1, 1], [[0, 1, 2], [0, 2, 1], [1, 2, 0]], counts=[1, 2, 2])


def test_objectives_and_solver():
    p = three_jobs()
    assert [cs.objective(p, s) for s in ([0, 2, 1], [0, 1, 2], [1, 0, 2], [1, 2, 0])] == [
        21, 25, 10, 7]
    r = cs.solve(p, "T", "sum")
    assert r["schedule"] == [1, 2, 0]
    assert r["objective"] == 7
    assert p.format(r["schedule"]) == "J2,J3,J1"


def test_pta_rules():
    p = five_agents()
    assert cs.solve(p)["objective"] == 5
    assert cs.pta_copeland(p) == [0, 1, 2]
    assert cs.pta_minimax(p) == [0, 1, 2]
    assert cs.pta_consistent_schedule(p) == [0, 1, 2]
    assert cs.check_pta(p, [0, 1, 2])["holds"]
    assert cs.paradox_rate(p, [0, 2, 1]) == Fraction(1, 3)


def test_axioms():
    report = cs.check_pareto(three_jobs(), [1, 2, 0])
    assert not report["holds"]
    assert report["pairs"] == [(0, 2)]
    assert cs.test_reinforcement("sum-T", 5, 100, 3)["holds"]


def test_errors_map_to_exceptions():
    with pytest.raises(cs.UnsupportedCombination):
        cs.solve(five_agents(), "L", "lp")
    with pytest.raises(cs.CapacityError):
        cs.brute_force(cs.generate_impartial(11, 2))
    with pytest.raises(cs.ParseError):
        cs.parse_preflib("1: 1,1\n")
    with pytest.raises(cs.InvalidSpec):
        cs.generate_mallows(3, 5, phi=0.0)
    assert issubclass(cs.CapacityError, cs.Error)


def test_large_lp_objectives_are_exact():
    p = cs.Profile([1000] * 6, [[0, 1, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0]], counts=[3000, 3000])
    value = cs.objective(p, [0, 1, 2, 3, 4, 5], "SD", "lp", 4)
    assert isinstance(value, int)
    assert value > 2**63


def test_files_and_generators():
    p = cs.load_instance(str(DATA / "three_jobs_two_agents.txt"))
    assert p == three_jobs()
    assert cs.read_instance(p.to_text()) == p
    g = cs.generate_impartial(10, 500, p_max=10, seed=7)
    assert g == cs.generate_impartial(10, 500, p_max=10, seed=7)
    assert g.num_agents == 500 and all(1 <= x <= 10 for x in g.lengths)
    m = cs.generate_mallows(5, 50, phi=0.3, seed=2)
    assert m.num_jobs == 5


def test_gini_and_experiment():
    assert cs.gini([0, 0, 0, 1]) == Fraction(3, 4)
    assert cs.gini([0, 0]) == 0
    out = cs.run_experiment("m = 5\nn = 30\npmax = 4\ninstances = 2\nseed = 3\n")
    assert out["failed"] == 0
    assert out["copeland_ratio_sum"]["mean"] >= 1.0
    assert out["rows_csv"].startswith("instance,")
    assert "seed = 3" in out["metadata"]


def test_ilp_export():
    text = cs.export_ilp(three_jobs(), "T")
    assert text.startswith("\\") and "Binaries" in text
