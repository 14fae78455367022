"""Independent reference computations used only by the tests.

Everything here works from point samples of f on a uniform grid, never
from the library's prefix areas or edge-anchored windows.
"""

import itertools
import random
from fractions import Fraction

from heliotrack.stepfn import StepFunction


def riemann_gain(f: StepFunction, a, b, grid: int = 1) -> Fraction:
    """Midpoint sum over cells of width 1/grid; exact when a, b and the edges lie on the grid."""
    a, b = Fraction(a), Fraction(b)
    lo, hi = a * grid, b * grid
    assert lo.denominator == 1 and hi.denominator == 1
    return sum(
        (f.value_at(Fraction(2 * c + 1, 2 * grid)) for c in range(int(lo), int(hi))),
        Fraction(0),
    ) / grid


def grid_best_window(f: StepFunction, length, grid: int = 1):
    """Best window of the given length over every start on the 1/grid lattice."""
    length = Fraction(length)
    best = None
    for s in range(0, int(f.extent * grid) + 1):
        start = Fraction(s, grid)
        if start + length > f.extent:
            break
        g = riemann_gain(f, start, start + length, grid)
        if best is None or g > best[1]:
            best = (start, g)
    return best


def random_step_function(rng: random.Random, n_max=6, h_max=9, extent_max=12) -> StepFunction:
    n = rng.randint(1, n_max)
    while True:
        lengths = [rng.randint(1, max(1, extent_max // n + 1)) for _ in range(n)]
        if sum(lengths) <= extent_max:
            break
    return StepFunction(tuple(lengths), tuple(rng.randint(0, h_max) for _ in range(n)))


def random_unimodal(rng: random.Random, n_max=6, h_max=9, extent_max=12) -> StepFunction:
    """Non-decreasing then non-increasing positive heights with a single peak plateau."""
    n = rng.randint(1, n_max)
    while True:
        lengths = [rng.randint(1, max(1, extent_max // n + 1)) for _ in range(n)]
        if sum(lengths) <= extent_max:
            break
    peak = rng.randrange(n)
    up = sorted(rng.randint(1, h_max) for _ in range(peak + 1))
    down = sorted((rng.randint(1, up[-1]) for _ in range(n - peak - 1)), reverse=True)
    return StepFunction(tuple(lengths), tuple(up + down))


def brute_table_value(candidates, j: int, l: int) -> Fraction:
    """Best gain of at most j candidates (repeats allowed) with total length <= l."""
    best = Fraction(0)
    for k in range(1, j + 1):
        for combo in itertools.combinations_with_replacement(candidates, k):
            if sum(b.length for b in combo) <= l:
                best = max(best, sum((b.gain for b in combo), Fraction(0)))
    return best
