"""Step-function irradiance profiles and the gain primitives built on them.

A profile is a sequence of steps over the relative angle between Sun and
collector. Step lengths are integers in units of ``quantum`` degrees; heights
are non-negative rationals. Every quantity here is exact (``Fraction``).
Intervals are half-open ``[start, end)``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    EmptyInputError,
    LengthExceedsExtentError,
    NonCommensurateError,
    OutOfDomainError,
    ValidationError,
)

QUANTIZE_RTOL = 1e-9


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, ``"p/q"``/decimal strings and floats exactly.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError(f"not a number: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValidationError(f"not a finite number: {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"not a rational: {x!r}") from exc
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"not a rational: {x!r}") from exc


def format_fraction(x: Fraction) -> str:
    """Canonical lowest-terms string, ``"7"`` or ``"7/2"``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class StepFunction:
    lengths: tuple[int, ...]
    values: tuple[Fraction, ...]
    quantum: Fraction = Fraction(1)

    def __post_init__(self):
        lengths = tuple(self.lengths)
        values = tuple(as_fraction(v) for v in self.values)
        if not lengths:
            raise EmptyInputError("a step function needs at least one step")
        if len(lengths) != len(values):
            raise ValidationError(
                f"{len(lengths)} step lengths but {len(values)} step values"
            )
        for ln in lengths:
            if isinstance(ln, bool) or int(ln) != ln or ln < 1:
                raise ValidationError(f"step lengths must be positive integers, got {ln!r}")
        for v in values:
            if v < 0:
                raise ValidationError(f"step values must be non-negative, got {v}")
        quantum = as_fraction(self.quantum)
        if quantum <= 0:
            raise ValidationError(f"quantum must be positive, got {quantum}")
        object.__setattr__(self, "lengths", tuple(int(ln) for ln in lengths))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "quantum", quantum)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, object]], quantum=1) -> StepFunction:
        pairs = list(pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), quantum)

    @property
    def n(self) -> int:
        return len(self.lengths)

    @cached_property
    def edges(self) -> tuple[int, ...]:
        out = [0]
        for ln in self.lengths:
            out.append(out[-1] + ln)
        return tuple(out)

    @property
    def extent(self) -> int:
        return self.edges[-1]

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @cached_property
    def _areas(self) -> tuple[Fraction, ...]:
        # integral of f over [0, edges[k])
        out = [Fraction(0)]
        for ln, v in zip(self.lengths, self.values):
            out.append(out[-1] + v * ln)
        return tuple(out)

    def pairs(self) -> list[tuple[int, Fraction]]:
        return list(zip(self.lengths, self.values))

    def step_index(self, x) -> int:
        """Index of the step containing ``x``; the right end maps to the last step."""
        k = bisect.bisect_right(self.edges, x) - 1
        return min(max(k, 0), self.n - 1)

    def value_at(self, x) -> Fraction:
        x = as_fraction(x)
        if x < 0 or x >= self.extent:
            return Fraction(0)
        return self.values[self.step_index(x)]

    def area_to(self, x) -> Fraction:
        """Integral of f over ``[0, x)`` for ``0 <= x <= extent``."""
        k = self.step_index(x)
        return self._areas[k] + self.values[k] * (x - self.edges[k])

    def scaled_values(self) -> tuple[int, tuple[int, ...]]:
        """Common denominator ``d`` and the heights multiplied by ``d`` as ints."""
        d = 1
        for v in self.values:
            d = d * v.denominator // math.gcd(d, v.denominator)
        return d, tuple(int(v * d) for v in self.values)


@dataclass(frozen=True, order=True)
class Interval:
    start: Fraction
    end: Fraction

    def __post_init__(self):
        start, end = as_fraction(self.start), as_fraction(self.end)
        if start > end:
            raise ValidationError(f"interval start {start} exceeds end {end}")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)

    @property
    def length(self) -> Fraction:
        return self.end - self.start

    def within(self, f: StepFunction) -> bool:
        return 0 <= self.start and self.end <= f.extent

    def is_discrete(self, f: StepFunction) -> bool:
        return self.start in f.edge_set and self.end in f.edge_set

    def is_semi_discrete(self, f: StepFunction) -> bool:
        return self.start in f.edge_set or self.end in f.edge_set

    def steps(self, f: StepFunction) -> range:
        """Indices of steps the interval overlaps with positive measure."""
        if self.length == 0:
            return range(0)
        first = f.step_index(self.start)
        last = bisect.bisect_left(f.edges, self.end) - 1
        return range(first, last + 1)

    def is_md(self, f: StepFunction) -> bool:
        """Discrete and overlapping a step of some local-maximum plateau."""
        if not self.is_discrete(f) or self.length == 0:
            return False
        covered = self.steps(f)
        return any(
            first <= covered[-1] and covered[0] <= last
            for first, last in peak_plateaus(f)
        )

    def __str__(self):
        return f"[{format_fraction(self.start)}, {format_fraction(self.end)})"


@dataclass(frozen=True)
class Solution:
    """A multiset of intervals stored as sorted ``(interval, count)`` pairs."""

    entries: tuple[tuple[Interval, int], ...] = ()

    def __post_init__(self):
        merged: dict[Interval, int] = {}
        for t, c in self.entries:
            if isinstance(c, bool) or int(c) != c or c < 1:
                raise ValidationError(f"interval counts must be positive integers, got {c!r}")
            merged[t] = merged.get(t, 0) + int(c)
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def of(cls, *intervals: Interval) -> Solution:
        return cls(tuple((t, 1) for t in intervals))

    def __iter__(self) -> Iterator[tuple[Interval, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: Solution) -> Solution:
        return Solution(self.entries + other.entries)

    @property
    def total_length(self) -> Fraction:
        return sum((t.length * c for t, c in self.entries), Fraction(0))

    @property
    def cardinality(self) -> int:
        return sum(c for t, c in self.entries if t.length > 0)

    def expanded(self) -> list[Interval]:
        return [t for t, c in self.entries for _ in range(c)]


@dataclass(frozen=True)
class GainProfile:
    """Best gain ``values[l]`` and a witness window for every length ``l``."""

    values: tuple[Fraction, ...]
    witnesses: tuple[Interval, ...] = field(repr=False)

    def __getitem__(self, length: int) -> Fraction:
        return self.values[length]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def omega_star(self) -> int:
        return len(self.values) - 1


def quantize(raw_lengths: Sequence, raw_values: Sequence, quantum) -> StepFunction:
    """Express raw step lengths (degrees) as integer multiples of ``quantum``."""
    if len(raw_lengths) == 0:
        raise EmptyInputError("no steps given")
    if len(raw_lengths) != len(raw_values):
        raise ValidationError("raw lengths and values differ in length")
    q = as_fraction(quantum)
    if q <= 0:
        raise ValidationError(f"quantum must be positive, got {q}")
    lengths = []
    for raw in raw_lengths:
        ratio = as_fraction(raw) / q
        units = round(ratio)
        if abs(float(ratio - units)) > QUANTIZE_RTOL * max(1.0, abs(float(ratio))):
            raise NonCommensurateError(f"length {raw} is not a multiple of quantum {q}")
        if units < 1:
            raise ValidationError(f"length {raw} rounds to a non-positive step")
        lengths.append(units)
    return StepFunction(tuple(lengths), tuple(raw_values), q)


def _check_within(f: StepFunction, t: Interval) -> None:
    if not t.within(f):
        raise OutOfDomainError(f"interval {t} leaves [0, {f.extent}]")


def gain(f: StepFunction, t: Interval) -> Fraction:
    _check_within(f, t)
    if t.length == 0:
        return Fraction(0)
    return f.area_to(t.end) - f.area_to(t.start)


def total_gain(f: StepFunction, solution: Solution) -> Fraction:
    return sum((gain(f, t) * c for t, c in solution), Fraction(0))


def peak_plateaus(f: StepFunction) -> list[tuple[int, int]]:
    """Maximal runs of equal positive height strictly above both neighbours.

    Returns inclusive 0-based ``(first, last)`` step ranges; f is taken as 0
    outside its domain.
    """
    out = []
    vals = f.values
    i = 0
    while i < f.n:
        j = i
        while j + 1 < f.n and vals[j + 1] == vals[i]:
            j += 1
        left = vals[i - 1] if i > 0 else 0
        right = vals[j + 1] if j + 1 < f.n else 0
        if vals[i] > 0 and left < vals[i] and right < vals[i]:
            out.append((i, j))
        i = j + 1
    return out


def local_maxima(f: StepFunction) -> list[int]:
    """0-based indices of local-maximum steps, one (the leftmost) per plateau."""
    return [first for first, _ in peak_plateaus(f)]


def is_unimodal(f: StepFunction) -> bool:
    return len(local_maxima(f)) == 1


def _window_candidates(f: StepFunction, length: Fraction) -> Iterator[Interval]:
    for e in f.edges:
        if e + length <= f.extent:
            yield Interval(e, e + length)
        if e - length >= 0:
            yield Interval(e - length, e)


def max_gain_window(f: StepFunction, length) -> tuple[Interval, Fraction]:
    """Best window of exactly ``length``; ties go to the smallest start.

    Some optimal window always has an endpoint on an edge, so only the
    windows anchored at an edge on either side are scanned.
    """
    length = as_fraction(length)
    if length <= 0:
        raise ValidationError(f"window length must be positive, got {length}")
    if length > f.extent:
        raise LengthExceedsExtentError(f"window length {length} exceeds extent {f.extent}")
    best_t, best_g = None, None
    for t in _window_candidates(f, length):
        g = f.area_to(t.end) - f.area_to(t.start)
        if best_g is None or g > best_g or (g == best_g and t.start < best_t.start):
            best_t, best_g = t, g
    return best_t, best_g


def gain_profile(f: StepFunction, omega_star: int) -> GainProfile:
    if int(omega_star) != omega_star or omega_star < 0:
        raise ValidationError(f"omega_star must be a non-negative integer, got {omega_star!r}")
    omega_star = int(omega_star)
    if omega_star > f.extent:
        raise LengthExceedsExtentError(f"omega_star {omega_star} exceeds extent {f.extent}")
    values, witnesses = [Fraction(0)], [Interval(0, 0)]
    for length in range(1, omega_star + 1):
        t, g = max_gain_window(f, length)
        values.append(g)
        witnesses.append(t)
    return GainProfile(tuple(values), tuple(witnesses))


def _feasible(v: Fraction, u1: Fraction, u2: Fraction) -> bool:
    return u1 <= v <= u2


def max_feasible_interval(f: StepFunction, u1, u2) -> Optional[Interval]:
    """Longest maximal run of consecutive steps with heights in ``[u1, u2]``.

    Ties go to the leftmost run; ``None`` when no step is feasible.
    """
    u1, u2 = as_fraction(u1), as_fraction(u2)
    if u1 > u2:
        raise ValidationError(f"empty band [{u1}, {u2}]")
    best = None
    run_start = None
    for k in range(f.n + 1):
        inside = k < f.n and _feasible(f.values[k], u1, u2)
        if inside and run_start is None:
            run_start = f.edges[k]
        elif not inside and run_start is not None:
            run = Interval(run_start, f.edges[k])
            if best is None or run.length > best.length:
                best = run
            run_start = None
    return best


def feasible_run_length(f: StepFunction, u1, u2, position) -> Fraction:
    """Length of the feasible run starting at ``position`` (0 if f is out of band there)."""
    u1, u2, position = as_fraction(u1), as_fraction(u2), as_fraction(position)
    if position < 0 or position >= f.extent:
        return Fraction(0)
    k = f.step_index(position)
    if not _feasible(f.values[k], u1, u2):
        return Fraction(0)
    while k + 1 < f.n and _feasible(f.values[k + 1], u1, u2):
        k += 1
    return f.edges[k + 1] - position
