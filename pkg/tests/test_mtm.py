import random
from fractions import Fraction

import pytest

from heliotrack.errors import InvalidQueryError, NoFeasibleIntervalError
from heliotrack.mtm import MTMQuery, is_in_band, solve_mtm
from heliotrack.oracle import brute_force_mtm
from heliotrack.stepfn import Interval, Solution

from helpers import random_step_function


def test_start_feasible(f1):
    sol = solve_mtm(f1, MTMQuery(1, 2, 0, 9))
    assert sol.moves == 3
    assert sol.initial_dwell == 2
    assert sol.schedule == Solution(((Interval(3, 6), 2), (Interval(3, 4), 1)))
    assert brute_force_mtm(f1, MTMQuery(1, 2, 0, 9)) == (3, 2)


def test_start_infeasible(f1):
    sol = solve_mtm(f1, MTMQuery(1, 2, 2, 9))
    assert (sol.moves, sol.initial_dwell) == (3, 0)
    assert brute_force_mtm(f1, MTMQuery(1, 2, 2, 9))[0] == 3


def test_nothing_left(f1):
    sol = solve_mtm(f1, MTMQuery(0, 10, 9, 9))
    assert sol.moves == 0 and len(sol.schedule) == 0


def test_whole_sweep_in_band(f1):
    sol = solve_mtm(f1, MTMQuery(0, 10))
    assert sol.moves == 0 and sol.initial_dwell == 9


def test_exact_multiple_merges_tail():
    from heliotrack.stepfn import StepFunction

    f = StepFunction.from_pairs([(3, 9), (3, 1), (3, 9)])
    sol = solve_mtm(f, MTMQuery(0, 2, 0))
    assert sol.moves == 3
    assert sol.schedule == Solution(((Interval(3, 6), 3),))


def test_no_feasible_interval(f1):
    with pytest.raises(NoFeasibleIntervalError):
        solve_mtm(f1, MTMQuery(10, 20, 0, 9))
    with pytest.raises(NoFeasibleIntervalError):
        brute_force_mtm(f1, MTMQuery(10, 20, 0, 9))


def test_fractional_start(f1):
    sol = solve_mtm(f1, MTMQuery(1, 2, Fraction(1, 2), 9))
    assert sol.initial_dwell == Fraction(3, 2)
    assert sol.moves == 3
    assert sol.schedule.total_length + sol.initial_dwell == 9 - Fraction(1, 2)


def test_budget_smaller_than_extent(f1):
    sol = solve_mtm(f1, MTMQuery(1, 2, 0, 7))
    assert sol.initial_dwell == 2
    assert sol.moves == 2
    assert sol.schedule.total_length == 5


@pytest.mark.parametrize(
    "query",
    [dict(u1=3, u2=1), dict(u1=0, u2=1, theta_s=10, omega_star=9), dict(u1=0, u2=1, omega_star=12)],
)
def test_invalid_queries(f1, query):
    with pytest.raises(InvalidQueryError):
        solve_mtm(f1, MTMQuery(**query))


def test_random_against_cover_oracle():
    rng = random.Random(7)
    for _ in range(150):
        f = random_step_function(rng)
        omega = rng.randint(1, f.extent)
        u1 = rng.randint(0, 9)
        q = MTMQuery(u1, u1 + rng.randint(0, 4), rng.randint(0, omega), omega)
        try:
            expected = brute_force_mtm(f, q)
        except NoFeasibleIntervalError:
            with pytest.raises(NoFeasibleIntervalError):
                solve_mtm(f, q)
            continue
        sol = solve_mtm(f, q)
        assert (sol.moves, sol.initial_dwell) == expected
        assert sol.schedule.cardinality == sol.moves
        assert sol.schedule.total_length + sol.initial_dwell == omega - q.theta_s
        assert all(is_in_band(f, t, q.u1, q.u2) for t, _ in sol.schedule)


def test_json_shape(f1):
    out = solve_mtm(f1, MTMQuery(1, 2, 0, 9)).to_json()
    assert out == {
        "m": 3,
        "l0": "2",
        "intervals": [
            {"start": "3", "end": "4", "count": 1},
            {"start": "3", "end": "6", "count": 2},
        ],
    }
