"""Minimum tracking motion: fewest collector moves keeping irradiance in a band."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidQueryError, NoFeasibleIntervalError
from .stepfn import (
    Interval,
    Solution,
    StepFunction,
    as_fraction,
    feasible_run_length,
    format_fraction,
    max_feasible_interval,
)


@dataclass(frozen=True)
class MTMQuery:
    u1: Fraction
    u2: Fraction
    theta_s: Fraction = Fraction(0)
    # None means the whole extent of f
    omega_star: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "u1", as_fraction(self.u1))
        object.__setattr__(self, "u2", as_fraction(self.u2))
        object.__setattr__(self, "theta_s", as_fraction(self.theta_s))
        if self.u1 > self.u2:
            raise InvalidQueryError(f"u1={self.u1} exceeds u2={self.u2}")
        if self.omega_star is not None and (
            int(self.omega_star) != self.omega_star or self.omega_star < 1
        ):
            raise InvalidQueryError(f"omega_star must be a positive integer, got {self.omega_star!r}")

    def resolve_omega(self, f: StepFunction) -> int:
        omega = f.extent if self.omega_star is None else int(self.omega_star)
        if omega > f.extent:
            raise InvalidQueryError(f"omega_star {omega} exceeds extent {f.extent}")
        if not 0 <= self.theta_s <= omega:
            raise InvalidQueryError(f"theta_s {self.theta_s} outside [0, {omega}]")
        return omega


@dataclass(frozen=True)
class MTMSolution:
    moves: int
    initial_dwell: Fraction
    schedule: Solution

    def to_json(self) -> dict:
        return {
            "m": self.moves,
            "l0": format_fraction(self.initial_dwell),
            "intervals": [
                {"start": format_fraction(t.start), "end": format_fraction(t.end), "count": c}
                for t, c in self.schedule
            ],
        }


def solve_mtm(f: StepFunction, query: MTMQuery) -> MTMSolution:
    """Closed-form minimum number of moves.

    The collector first dwells ``l0`` while f stays in band from ``theta_s``;
    the rest of the Sun's displacement is covered by copies of the longest
    in-band run, the last copy trimmed from the run's start.
    """
    omega = query.resolve_omega(f)
    budget = omega - query.theta_s
    l0 = min(feasible_run_length(f, query.u1, query.u2, query.theta_s), budget)
    remaining = budget - l0
    if remaining <= 0:
        return MTMSolution(0, l0, Solution())
    best = max_feasible_interval(f, query.u1, query.u2)
    if best is None:
        raise NoFeasibleIntervalError(
            f"no step height lies in [{query.u1}, {query.u2}] and {remaining} remains to cover"
        )
    moves = math.ceil(remaining / best.length)
    tail = remaining - (moves - 1) * best.length
    entries = [(best, moves - 1)] if moves > 1 else []
    entries.append((Interval(best.start, best.start + tail), 1))
    return MTMSolution(moves, l0, Solution(tuple(entries)))


def is_in_band(f: StepFunction, t: Interval, u1, u2) -> bool:
    u1, u2 = as_fraction(u1), as_fraction(u2)
    return all(u1 <= f.values[k] <= u2 for k in t.steps(f))
