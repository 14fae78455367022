from fractions import Fraction

import pytest

from heliotrack.bench import bench_scenario, budgets, pct_change, run_bench
from heliotrack.errors import ValidationError
from heliotrack.mec import csp_track_gain


def test_default_budgets():
    assert budgets(26) == [26, 19, 13, 6]
    assert budgets(4, sweep=True) == [1, 2, 3, 4]
    assert budgets(10, ["0.5"]) == [10, 5]
    assert budgets(1) == [1]


@pytest.mark.parametrize("args", [(0,), (5, ["0"]), (5, ["1.5"])])
def test_bad_budgets(args):
    with pytest.raises(ValidationError):
        budgets(*args)


def test_pct_change():
    assert pct_change(Fraction(9), Fraction(10)) == -10
    assert pct_change(Fraction(0), Fraction(0)) == 0


def test_rows_for_f2(f2):
    rows = bench_scenario("f2", f2, 6, m_max=6, fractions=["1/2"])
    table = {(r.algorithm, r.m): r for r in rows}
    assert table[("csp-track", 6)].gain == csp_track_gain(f2, 6)
    assert table[("dp", 3)].gain == 36
    assert table[("greedy", 3)].gain == 30
    assert table[("dp", 6)].gain == table[("csp-track", 6)].gain
    assert table[("dp", 6)].pct_decrease == 0


def test_run_bench_sorted(f1, f2):
    rows = run_bench([("b", f2, 6), ("a", f1, 9)], m_max=4)
    keys = [(r.scenario, r.algorithm, r.m) for r in rows]
    assert keys == sorted(keys)
    assert {r.scenario for r in rows} == {"a", "b"}
