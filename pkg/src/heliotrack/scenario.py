"""Synthetic irradiance profiles for single collector elements (SCE) and
whole assemblies (SCA).

Ray tracing is replaced by a facet model: every mirror contributes a
unit-height rectangular acceptance pulse around the zenith position. Each
mirror's angular error is a fixed tilt of random sign plus a uniform
perturbation; the pulse moves by ``deflection_factor`` times that error
(2 by the reflection law, 1 to apply the error directly). Pulse edges are
rounded to the quantum grid, so heights stay integer ray-count proxies.

Randomness comes from numpy's PCG64 generator seeded through
``SeedSequence``: SCE ``k`` of a scenario uses entropy ``[seed, 0, k]`` and
the per-SCE integer shifts of an assembly use ``[seed, 1]``. Mirror offsets
are drawn before the broken-mirror selection, so all failure modes of one
seed share the same perturbed geometry.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvalidParamsError, ValidationError
from .stepfn import StepFunction, as_fraction

FAILURE_MODES = ("none", "hce_rotated", "broken")
SWEEP_DEG = (0, 180)
ZENITH_DEG = 90


@dataclass(frozen=True)
class ScenarioParams:
    seed: int = 0
    mirrors_per_sce: int = 28
    base_tilt_deg: float = 0.2
    perturb_range_deg: float = 2.0
    sce_count: int = 12
    shift_range_deg: int = 3
    crop_window: tuple[float, float] = (75, 101)
    quantum_deg: float = 1.0
    failure_mode: str = "none"
    pulse_width_deg: float = 1.0
    # reflected rays turn by twice the mirror's angular error
    deflection_factor: float = 2.0
    # pulse width multiplier when the receiver tube is rotated
    narrowing_factor: float = 0.5
    broken_mirror_count: int = 3

    def __post_init__(self):
        object.__setattr__(self, "crop_window", tuple(self.crop_window))
        try:
            self.validate()
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidParamsError):
                raise
            raise InvalidParamsError(str(exc)) from exc

    def validate(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParamsError("seed must be a 64-bit unsigned integer")
        if self.mirrors_per_sce < 1 or self.sce_count < 1:
            raise InvalidParamsError("mirror and SCE counts must be positive")
        if self.base_tilt_deg < 0 or self.perturb_range_deg < 0 or self.shift_range_deg < 0:
            raise InvalidParamsError("tilt, perturbation and shift ranges must be non-negative")
        if self.pulse_width_deg <= 0 or not 0 < self.narrowing_factor <= 1:
            raise InvalidParamsError("pulse width must be positive and narrowing in (0, 1]")
        if self.deflection_factor <= 0:
            raise InvalidParamsError("deflection factor must be positive")
        if self.failure_mode not in FAILURE_MODES:
            raise InvalidParamsError(f"failure_mode must be one of {FAILURE_MODES}")
        if not 0 <= self.broken_mirror_count <= self.mirrors_per_sce:
            raise InvalidParamsError("cannot break more mirrors than the SCE has")
        q = as_fraction(self.quantum_deg)
        if q <= 0 or (SWEEP_DEG[1] - SWEEP_DEG[0]) % q:
            raise InvalidParamsError("quantum must divide the 180 degree sweep")
        lo, hi = (as_fraction(x) for x in self.crop_window)
        if not SWEEP_DEG[0] <= lo < hi <= SWEEP_DEG[1]:
            raise InvalidParamsError("crop window must lie inside [0, 180] degrees")
        if lo % q or hi % q:
            raise InvalidParamsError("crop window must sit on the quantum grid")

    @classmethod
    def from_json(cls, data: dict) -> ScenarioParams:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParamsError(f"unknown scenario parameters: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> dict:
        out = asdict(self)
        out["crop_window"] = list(self.crop_window)
        return out

    @property
    def cells(self) -> int:
        return int((SWEEP_DEG[1] - SWEEP_DEG[0]) / as_fraction(self.quantum_deg))


def _sce_cells(p: ScenarioParams, index: int = 0) -> np.ndarray:
    rng = np.random.default_rng([int(p.seed), 0, index])
    signs = rng.choice(np.array([-1.0, 1.0]), size=p.mirrors_per_sce)
    offsets = rng.uniform(-p.perturb_range_deg, p.perturb_range_deg, size=p.mirrors_per_sce)
    keep = np.ones(p.mirrors_per_sce, dtype=bool)
    if p.failure_mode == "broken":
        keep[rng.choice(p.mirrors_per_sce, size=p.broken_mirror_count, replace=False)] = False

    width = p.pulse_width_deg * (p.narrowing_factor if p.failure_mode == "hce_rotated" else 1.0)
    q = float(p.quantum_deg)
    centers = ZENITH_DEG + p.deflection_factor * (signs * p.base_tilt_deg + offsets)
    cells = np.zeros(p.cells, dtype=np.int64)
    for c in centers[keep]:
        lo = int(np.clip(round((c - width / 2 - SWEEP_DEG[0]) / q), 0, p.cells))
        hi = int(np.clip(round((c + width / 2 - SWEEP_DEG[0]) / q), 0, p.cells))
        cells[lo:hi] += 1
    return cells


def _shift(cells: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros_like(cells)
    if d >= 0:
        out[d:] = cells[: len(cells) - d]
    else:
        out[:d] = cells[-d:]
    return out


def cells_to_step_function(cells, quantum=1) -> StepFunction:
    """Run-length encode per-cell heights; equal neighbouring cells merge."""
    lengths, values = [], []
    for v in cells:
        v = int(v)
        if values and values[-1] == v:
            lengths[-1] += 1
        else:
            lengths.append(1)
            values.append(v)
    return StepFunction(tuple(lengths), tuple(values), as_fraction(quantum))


def step_function_cells(f: StepFunction) -> list[Fraction]:
    return [v for ln, v in zip(f.lengths, f.values) for _ in range(ln)]


def crop(f: StepFunction, start: int, end: int) -> StepFunction:
    """Restrict f to ``[start, end)`` (quantum units) and re-base it at 0."""
    if not 0 <= start < end <= f.extent:
        raise ValidationError(f"crop [{start}, {end}) outside [0, {f.extent}]")
    pairs = []
    for k in range(f.n):
        lo, hi = max(f.edges[k], start), min(f.edges[k + 1], end)
        if lo < hi:
            pairs.append((hi - lo, f.values[k]))
    return StepFunction.from_pairs(pairs, f.quantum)


def generate_sce(p: ScenarioParams, index: int = 0) -> StepFunction:
    """Full-sweep profile of one collector element."""
    return cells_to_step_function(_sce_cells(p, index), p.quantum_deg)


def _crop_cells(p: ScenarioParams) -> tuple[int, int]:
    q = as_fraction(p.quantum_deg)
    lo, hi = (as_fraction(x) for x in p.crop_window)
    return int((lo - SWEEP_DEG[0]) / q), int((hi - SWEEP_DEG[0]) / q)


def sca_shifts(p: ScenarioParams) -> list[int]:
    rng = np.random.default_rng([int(p.seed), 1])
    return [int(d) for d in rng.integers(-p.shift_range_deg, p.shift_range_deg, size=p.sce_count, endpoint=True)]


def generate_sca(p: ScenarioParams, cropped: bool = True) -> StepFunction:
    """Sum of ``sce_count`` shifted element profiles, cropped to the window."""
    q = as_fraction(p.quantum_deg)
    total = np.zeros(p.cells, dtype=np.int64)
    for k, d in enumerate(sca_shifts(p)):
        steps = int(as_fraction(d) / q)
        total += _shift(_sce_cells(p, k), steps)
    if cropped:
        lo, hi = _crop_cells(p)
        total = total[lo:hi]
    return cells_to_step_function(total, q)


def crop_to_window(f: StepFunction, p: ScenarioParams) -> StepFunction:
    lo, hi = _crop_cells(p)
    return crop(f, lo, hi)


def scenario_meta(p: ScenarioParams, kind: str, omega_star: Optional[int] = None) -> dict:
    meta = {"kind": kind, "params": p.to_json()}
    if omega_star is not None:
        meta["omega"] = omega_star
    return meta


def params_from_file(path) -> ScenarioParams:
    with open(path) as fh:
        return ScenarioParams.from_json(json.load(fh))
