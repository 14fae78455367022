"""Brute-force references and the unbounded-knapsack instance transformer.

Nothing here shares code paths with the solvers beyond the ``StepFunction``
container: gains are recomputed from unit cells, windows are scanned at every
integer offset, and budgets are enumerated exhaustively.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    EmptyInputError,
    InstanceTooLargeError,
    NoFeasibleIntervalError,
    ValidationError,
)
from .mtm import MTMQuery
from .stepfn import Interval, Solution, StepFunction, as_fraction, format_fraction

MEC_LIMITS = {"n": 8, "extent": 16, "m": 5, "omega_star": 12}
UKP_LIMIT = 10**7
MTM_EXTENT_LIMIT = 64
HALF = Fraction(1, 2)


def _cell_values(f: StepFunction, grid: int = 1) -> list[Fraction]:
    """Height of f on each cell of width ``1/grid``, sampled at the cell midpoint."""
    cells = f.extent * grid
    return [f.value_at(Fraction(2 * c + 1, 2 * grid)) for c in range(cells)]


def _check_mec_limits(f: StepFunction, m: int, omega_star: int) -> None:
    sizes = {"n": f.n, "extent": f.extent, "m": m, "omega_star": omega_star}
    for key, limit in MEC_LIMITS.items():
        if sizes[key] > limit:
            raise InstanceTooLargeError(f"{key}={sizes[key]} exceeds oracle limit {limit}")


def _length_multisets(max_parts: int, budget: int, lengths: list[int]) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of at most ``max_parts`` lengths summing to <= budget."""

    def rec(prefix: tuple[int, ...], cap: int, left: int):
        yield prefix
        if len(prefix) == max_parts:
            return
        for ln in lengths:
            if ln <= cap and ln <= left:
                yield from rec(prefix + (ln,), ln, left - ln)

    yield from rec((), max(lengths, default=0), budget)


def brute_force_mec(f: StepFunction, m: int, omega_star: int) -> tuple[Fraction, Solution]:
    """Exhaustive optimum over multisets of at most ``m`` integer-endpoint intervals.

    The objective separates over intervals, so for each multiset of lengths
    the best choice is the best window of each length, found by scanning every
    integer offset. All multisets of lengths are then enumerated. Ties go to
    the lexicographically smallest sorted interval tuple.
    """
    if m < 0 or omega_star < 0:
        raise ValidationError("m and omega_star must be non-negative")
    _check_mec_limits(f, m, omega_star)
    cells = _cell_values(f)
    best_window: dict[int, tuple[Fraction, Interval]] = {}
    for ln in range(1, min(omega_star, f.extent) + 1):
        for a in range(f.extent - ln + 1):
            g = sum(cells[a : a + ln], Fraction(0))
            if ln not in best_window or g > best_window[ln][0]:
                best_window[ln] = (g, Interval(a, a + ln))

    best_gain, best_key = Fraction(0), ()
    for combo in _length_multisets(m, omega_star, sorted(best_window, reverse=True)):
        g = sum((best_window[ln][0] for ln in combo), Fraction(0))
        key = tuple(sorted(best_window[ln][1] for ln in combo))
        if g > best_gain or (g == best_gain and key < best_key):
            best_gain, best_key = g, key
    return best_gain, Solution.of(*best_key)


def naive_mec(f: StepFunction, m: int, omega_star, grid: int = 1) -> Fraction:
    """Literal enumeration of every multiset of grid-aligned intervals. Tiny inputs only."""
    omega_star = as_fraction(omega_star)
    cells = _cell_values(f, grid)
    points = len(cells)
    if points > 24 or m > 3:
        raise InstanceTooLargeError("naive enumeration is limited to 24 grid points and m <= 3")
    windows = [(Fraction(0), Fraction(0))]
    for a in range(points):
        for b in range(a + 1, points + 1):
            windows.append((Fraction(b - a, grid), sum(cells[a:b], Fraction(0)) / grid))
    best = Fraction(0)
    for combo in itertools.combinations_with_replacement(windows, m):
        if sum(w[0] for w in combo) <= omega_star:
            best = max(best, sum((w[1] for w in combo), Fraction(0)))
    return best


def brute_force_mtm(f: StepFunction, query: MTMQuery) -> tuple[int, Fraction]:
    """Fewest in-band integer-endpoint intervals covering the displacement left after l0.

    Returns ``(moves, l0)``. Requires an integer start position.
    """
    omega = query.resolve_omega(f)
    if query.theta_s.denominator != 1:
        raise ValidationError("the cover oracle needs an integer start position")
    if f.extent > MTM_EXTENT_LIMIT:
        raise InstanceTooLargeError(f"extent {f.extent} exceeds {MTM_EXTENT_LIMIT}")
    cells = _cell_values(f)
    ok = [query.u1 <= v <= query.u2 for v in cells]
    start = int(query.theta_s)
    l0 = 0
    while start + l0 < omega and ok[start + l0]:
        l0 += 1
    remaining = omega - start - l0
    if remaining == 0:
        return 0, Fraction(l0)

    lengths = set()
    for a in range(f.extent):
        b = a
        while b < f.extent and ok[b]:
            b += 1
            lengths.add(b - a)
    if not lengths:
        raise NoFeasibleIntervalError("no in-band interval exists")

    reached = {0}
    for moves in itertools.count(1):
        reached = {s + ln for s in reached for ln in lengths if s + ln <= remaining}
        if remaining in reached:
            return moves, Fraction(l0)
        if not reached:
            raise NoFeasibleIntervalError("remaining displacement cannot be covered")


@dataclass(frozen=True)
class KnapsackInstance:
    items: tuple[tuple[int, Fraction], ...]
    capacity: int

    def __post_init__(self):
        items = tuple((w, as_fraction(a)) for w, a in self.items)
        if not items:
            raise EmptyInputError("knapsack instance has no items")
        for w, a in items:
            if isinstance(w, bool) or int(w) != w or w < 1:
                raise ValidationError(f"item weights must be positive integers, got {w!r}")
            if a <= 0:
                raise ValidationError(f"item profits must be positive, got {a}")
        if int(self.capacity) != self.capacity or self.capacity < 1:
            raise ValidationError(f"capacity must be a positive integer, got {self.capacity!r}")
        object.__setattr__(self, "items", tuple((int(w), a) for w, a in items))
        object.__setattr__(self, "capacity", int(self.capacity))

    @classmethod
    def from_json(cls, data: dict) -> KnapsackInstance:
        try:
            items = tuple((it["w"], it["a"]) for it in data["items"])
            return cls(items, data["capacity"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed knapsack instance: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "capacity": self.capacity,
            "items": [{"w": w, "a": format_fraction(a)} for w, a in self.items],
        }


def brute_force_ukp(k: KnapsackInstance) -> tuple[Fraction, list[int]]:
    ranges = [range(k.capacity // w + 1) for w, _ in k.items]
    if math.prod(len(r) for r in ranges) > UKP_LIMIT:
        raise InstanceTooLargeError("too many count vectors to enumerate")
    best, best_counts = Fraction(0), [0] * len(k.items)
    for counts in itertools.product(*ranges):
        if sum(x * w for x, (w, _) in zip(counts, k.items)) > k.capacity:
            continue
        profit = sum((x * a for x, (_, a) in zip(counts, k.items)), Fraction(0))
        if profit > best:
            best, best_counts = profit, list(counts)
    return best, best_counts


def knapsack_to_mec(k: KnapsackInstance) -> tuple[StepFunction, int, int]:
    """Item steps of height profit/weight separated by zero gaps of length W + 1."""
    pairs: list[tuple[int, Fraction]] = []
    for idx, (w, a) in enumerate(k.items):
        if idx:
            pairs.append((k.capacity + 1, Fraction(0)))
        pairs.append((w, a / w))
    m = sum(k.capacity // w for w, _ in k.items)
    return StepFunction.from_pairs(pairs), m, k.capacity
