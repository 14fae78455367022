"""Maximal energy collection: best total gain with at most ``m`` dwells whose
lengths sum to at most ``omega_star``.

General profiles go through a dynamic program over md-intervals (discrete
intervals touching a local-maximum plateau) for the first ``m - 1`` dwells,
combined with the best single window for the remaining length. Unimodal
profiles also admit the equal-split greedy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    InternalInconsistencyError,
    LengthExceedsExtentError,
    NotUnimodalError,
    ValidationError,
)
from .stepfn import (
    GainProfile,
    Interval,
    Solution,
    StepFunction,
    as_fraction,
    format_fraction,
    gain_profile,
    is_unimodal,
    max_gain_window,
    peak_plateaus,
    total_gain,
)

logger = logging.getLogger(__name__)

# table cells not produced by using a candidate
FROM_FEWER_MOVES = -1
FROM_SHORTER = -2

_INT64_HEADROOM = 2**62


@dataclass(frozen=True)
class MDInterval:
    interval: Interval
    length: int
    gain: Fraction


@dataclass(frozen=True)
class MECSolution:
    total_gain: Fraction
    intervals: Solution
    used_length: Fraction
    split: Optional[int] = None

    def to_json(self, schedule: Optional[list] = None, as_float: bool = False) -> dict:
        fmt = float if as_float else format_fraction
        out = {
            "gain": fmt(self.total_gain),
            "split_l": self.split,
            "used_length": fmt(self.used_length),
            "intervals": [
                {"start": fmt(t.start), "end": fmt(t.end), "count": c}
                for t, c in self.intervals
            ],
        }
        if schedule is not None:
            out["schedule"] = [entry.to_json(as_float) for entry in schedule]
        return out


def _check_budget(f: StepFunction, omega_star) -> int:
    if int(omega_star) != omega_star or omega_star < 1:
        raise ValidationError(f"omega_star must be a positive integer, got {omega_star!r}")
    if omega_star > f.extent:
        raise LengthExceedsExtentError(f"omega_star {omega_star} exceeds extent {f.extent}")
    return int(omega_star)


def _check_moves(m) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise ValidationError(f"m must be a positive integer, got {m!r}")
    return int(m)


def enumerate_md_intervals(f: StepFunction, omega_star: int) -> tuple[MDInterval, ...]:
    """All edge-to-edge intervals of length <= omega_star overlapping a peak plateau.

    Ordered by start edge, then end edge. Every step of a plateau counts as
    a local maximum here, which only ever adds candidates.
    """
    is_peak = [False] * f.n
    for first, last in peak_plateaus(f):
        for k in range(first, last + 1):
            is_peak[k] = True
    out = []
    for a in range(f.n):
        touches_peak = False
        for b in range(a, f.n):
            length = f.edges[b + 1] - f.edges[a]
            if length > omega_star:
                break
            touches_peak = touches_peak or is_peak[b]
            if touches_peak:
                t = Interval(f.edges[a], f.edges[b + 1])
                g = f.area_to(t.end) - f.area_to(t.start)
                out.append(MDInterval(t, length, g))
    return tuple(out)


@dataclass
class DPTable:
    """Best gain from at most ``j`` candidates of total length at most ``l``.

    ``scaled[j, l] / scale`` is the gain. ``choice[j, l]`` is either the index
    of the candidate used last or one of FROM_FEWER_MOVES / FROM_SHORTER.
    """

    candidates: tuple[MDInterval, ...]
    scale: int
    scaled: np.ndarray
    choice: np.ndarray = field(repr=False)

    @property
    def j_max(self) -> int:
        return self.scaled.shape[0] - 1

    @property
    def l_max(self) -> int:
        return self.scaled.shape[1] - 1

    def value(self, j: int, l: int) -> Fraction:
        return Fraction(int(self.scaled[j, l]), self.scale)

    def row(self, j: int) -> list[Fraction]:
        return [Fraction(int(v), self.scale) for v in self.scaled[j]]

    def walk(self, j: int, l: int) -> list[MDInterval]:
        """Follow back-references from cell (j, l); returns the candidates used."""
        used = []
        while j > 0 and l > 0:
            c = int(self.choice[j, l])
            if c == FROM_FEWER_MOVES:
                j -= 1
            elif c == FROM_SHORTER:
                l -= 1
            else:
                b = self.candidates[c]
                used.append(b)
                j -= 1
                l -= b.length
        return used


def _common_scale(gains: Sequence[Fraction]) -> int:
    return math.lcm(1, *(g.denominator for g in gains))


def dp_discrete(
    candidates: Sequence[MDInterval], j_max: int, l_max: int, verify: bool = False
) -> DPTable:
    """Collapsed (moves x length) table with unbounded reuse of candidates.

    Only the best candidate of each length can matter for a cell, so the
    inner loop runs over distinct lengths. With ``verify`` the literal
    three-index table is also built and compared cell by cell.
    """
    candidates = tuple(candidates)
    if j_max < 0 or l_max < 0:
        raise ValidationError("table dimensions must be non-negative")
    scale = _common_scale([b.gain for b in candidates])
    gains = [int(b.gain * scale) for b in candidates]

    best_by_length: dict[int, int] = {}
    for k, b in enumerate(candidates):
        if b.length > l_max:
            continue
        cur = best_by_length.get(b.length)
        if cur is None or gains[k] > gains[cur]:
            best_by_length[b.length] = k

    bound = j_max * max(gains, default=0)
    dtype = np.int64 if bound < _INT64_HEADROOM else object
    scaled = np.zeros((j_max + 1, l_max + 1), dtype=dtype)
    choice = np.full((j_max + 1, l_max + 1), FROM_FEWER_MOVES, dtype=np.int32)

    for j in range(1, j_max + 1):
        prev = scaled[j - 1]
        cur = prev.copy()
        ch = choice[j]
        for length in sorted(best_by_length):
            k = best_by_length[length]
            cand = prev[: l_max + 1 - length] + gains[k]
            better = cand > cur[length:]
            cur[length:][better] = cand[better]
            ch[length:][better] = k
        carried = np.maximum.accumulate(cur)
        ch[carried > cur] = FROM_SHORTER
        scaled[j] = carried

    table = DPTable(candidates, scale, scaled, choice)
    if verify:
        ref = dp_reference_3d(candidates, j_max, l_max)
        for j in range(j_max + 1):
            for l in range(l_max + 1):
                if ref[-1][j][l] != table.value(j, l):
                    raise InternalInconsistencyError(
                        f"3D table {ref[-1][j][l]} != 2D table {table.value(j, l)} at j={j}, l={l}"
                    )
    return table


def dp_reference_3d(
    candidates: Sequence[MDInterval], j_max: int, l_max: int
) -> list[list[list[Fraction]]]:
    """Literal D[i][j][l] recurrence over candidate prefixes. Small inputs only."""
    zero = Fraction(0)
    table = [[[zero] * (l_max + 1) for _ in range(j_max + 1)]]
    for b in candidates:
        prev = table[-1]
        cur = [[zero] * (l_max + 1) for _ in range(j_max + 1)]
        for j in range(1, j_max + 1):
            for l in range(1, l_max + 1):
                if l < b.length:
                    cur[j][l] = prev[j][l]
                else:
                    cur[j][l] = max(prev[j][l], b.gain + cur[j - 1][l - b.length])
        table.append(cur)
    return table


def combine(table: DPTable, profile: GainProfile, omega_star: int, j: Optional[int] = None):
    """Best split of the length budget between the table row and one free window.

    Returns ``(best_gain, split)`` with the smallest maximizing split.
    """
    j = table.j_max if j is None else j
    if profile.omega_star < omega_star or table.l_max < omega_star:
        raise ValidationError("table and profile must cover lengths 0..omega_star")
    best, split = None, None
    for l in range(omega_star + 1):
        v = table.value(j, l) + profile[omega_star - l]
        if best is None or v > best:
            best, split = v, l
    return best, split


def reconstruct(
    table: DPTable, profile: GainProfile, split: int, omega_star: int, j: Optional[int] = None
) -> Solution:
    j = table.j_max if j is None else j
    used = table.walk(j, split)
    intervals = [b.interval for b in used]
    rest = omega_star - split
    if profile[rest] > 0:
        intervals.append(profile.witnesses[rest])
    return Solution.of(*intervals)


def solve_mec(
    f: StepFunction, m: int, omega_star: int, allow_unimodal: bool = False, verify: bool = False
) -> MECSolution:
    m = _check_moves(m)
    omega_star = _check_budget(f, omega_star)
    if allow_unimodal and is_unimodal(f):
        return solve_mec_unimodal(f, m, omega_star)
    candidates = enumerate_md_intervals(f, omega_star)
    table = dp_discrete(candidates, m - 1, omega_star, verify=verify)
    profile = gain_profile(f, omega_star)
    best, split = combine(table, profile, omega_star)
    solution = reconstruct(table, profile, split, omega_star)
    rebuilt = total_gain(f, solution)
    if rebuilt != best:
        raise InternalInconsistencyError(f"rebuilt gain {rebuilt} != optimum {best}")
    if solution.cardinality > m or solution.total_length > omega_star:
        raise InternalInconsistencyError("reconstructed multiset violates the budgets")
    logger.debug("mec m=%d omega=%d |B|=%d gain=%s split=%d", m, omega_star, len(candidates), best, split)
    return MECSolution(best, solution, solution.total_length, split)


def _equal_split(f: StepFunction, m, omega_star) -> MECSolution:
    m = _check_moves(m)
    omega_star = as_fraction(omega_star)
    if omega_star <= 0:
        raise ValidationError(f"omega_star must be positive, got {omega_star}")
    if omega_star > f.extent:
        raise LengthExceedsExtentError(f"omega_star {omega_star} exceeds extent {f.extent}")
    window, g = max_gain_window(f, omega_star / m)
    return MECSolution(m * g, Solution(((window, m),)), omega_star)


def solve_mec_unimodal(f: StepFunction, m: int, omega_star) -> MECSolution:
    """``m`` copies of the best window of length ``omega_star / m`` (exact, may be fractional)."""
    if not is_unimodal(f):
        raise NotUnimodalError("profile has more than one local maximum (or none)")
    return _equal_split(f, m, omega_star)


def greedy_baseline(f: StepFunction, m: int, omega_star) -> MECSolution:
    """The equal-split greedy applied regardless of modality."""
    return _equal_split(f, m, omega_star)


def csp_track_gain(f: StepFunction, omega_star: int) -> Fraction:
    """Model of conventional tracking: one unit-length dwell per quantum of Sun travel."""
    omega_star = _check_budget(f, omega_star)
    _, g1 = max_gain_window(f, 1)
    return omega_star * g1


@dataclass(frozen=True)
class ScheduleEntry:
    displacement: Fraction
    length: Fraction
    # None marks idle time at the end of the budget
    dwell: Optional[Interval] = None

    def to_json(self, as_float: bool = False) -> dict:
        fmt = float if as_float else format_fraction
        if self.dwell is None:
            return {"at": fmt(self.displacement), "idle": fmt(self.length)}
        return {
            "at": fmt(self.displacement),
            "start": fmt(self.dwell.start),
            "end": fmt(self.dwell.end),
        }


def emit_schedule(solution: Solution, omega_star, theta_s=0) -> list[ScheduleEntry]:
    """Lay the multiset out in time: dwells by ascending start, then idle time."""
    omega_star, theta_s = as_fraction(omega_star), as_fraction(theta_s)
    budget = omega_star - theta_s
    if solution.total_length > budget:
        raise BudgetExceededError(
            f"dwells need {solution.total_length} but only {budget} remains"
        )
    out = []
    at = theta_s
    for t in solution.expanded():
        if t.length == 0:
            continue
        out.append(ScheduleEntry(at, t.length, t))
        at += t.length
    if at < omega_star:
        out.append(ScheduleEntry(at, omega_star - at))
    return out


def solve_mec_sweep(f: StepFunction, moves: Sequence[int], omega_star: int) -> dict[int, MECSolution]:
    """Optimal solutions for several movement budgets from a single table."""
    moves = sorted({_check_moves(m) for m in moves})
    omega_star = _check_budget(f, omega_star)
    if not moves:
        return {}
    table = dp_discrete(enumerate_md_intervals(f, omega_star), moves[-1] - 1, omega_star)
    profile = gain_profile(f, omega_star)
    out = {}
    for m in moves:
        best, split = combine(table, profile, omega_star, j=m - 1)
        solution = reconstruct(table, profile, split, omega_star, j=m - 1)
        if total_gain(f, solution) != best:
            raise InternalInconsistencyError(f"rebuilt gain differs from optimum at m={m}")
        out[m] = MECSolution(best, solution, solution.total_length, split)
    return out
