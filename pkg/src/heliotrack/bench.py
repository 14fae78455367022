"""Budget-reduction benchmark: DP vs equal-split greedy vs conventional tracking.

Each row reports a gain and its percentage change against the conventional
tracking gain of the same scenario (one unit dwell per quantum of travel).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, TextIO

from .errors import ValidationError
from .mec import csp_track_gain, greedy_baseline, solve_mec_sweep
from .stepfn import StepFunction, as_fraction, format_fraction

DEFAULT_FRACTIONS = (Fraction(3, 4), Fraction(1, 2), Fraction(1, 4))
ALGORITHMS = ("csp-track", "dp", "greedy")


@dataclass(frozen=True)
class BenchRow:
    scenario: str
    algorithm: str
    m: int
    gain: Fraction
    pct_decrease: Fraction


def budgets(m_max: int, fractions: Optional[Sequence] = None, sweep: bool = False) -> list[int]:
    """Movement budgets to evaluate: ``m_max`` then each fraction of it (floor, min 1)."""
    if m_max < 1:
        raise ValidationError(f"m-max must be positive, got {m_max}")
    if sweep:
        return list(range(1, m_max + 1))
    fractions = DEFAULT_FRACTIONS if fractions is None else [as_fraction(x) for x in fractions]
    for fr in fractions:
        if not 0 < fr <= 1:
            raise ValidationError(f"fractions must lie in (0, 1], got {fr}")
    ms = [m_max] + [max(1, math.floor(fr * m_max)) for fr in fractions]
    return list(dict.fromkeys(ms))


def pct_change(gain: Fraction, reference: Fraction) -> Fraction:
    if reference == 0:
        return Fraction(0)
    return 100 * (gain - reference) / reference


def bench_scenario(
    name: str,
    f: StepFunction,
    omega_star: int,
    m_max: Optional[int] = None,
    fractions: Optional[Sequence] = None,
    sweep: bool = False,
) -> list[BenchRow]:
    m_max = omega_star if m_max is None else m_max
    ms = budgets(m_max, fractions, sweep)
    reference = csp_track_gain(f, omega_star)
    rows = [BenchRow(name, "csp-track", m_max, reference, Fraction(0))]
    dp = solve_mec_sweep(f, ms, omega_star)
    for m in ms:
        rows.append(BenchRow(name, "dp", m, dp[m].total_gain, pct_change(dp[m].total_gain, reference)))
        g = greedy_baseline(f, m, omega_star).total_gain
        rows.append(BenchRow(name, "greedy", m, g, pct_change(g, reference)))
    return rows


def run_bench(
    scenarios: Iterable[tuple[str, StepFunction, int]],
    m_max: Optional[int] = None,
    fractions: Optional[Sequence] = None,
    sweep: bool = False,
) -> list[BenchRow]:
    rows = []
    for name, f, omega_star in scenarios:
        rows.extend(bench_scenario(name, f, omega_star, m_max, fractions, sweep))
    rows.sort(key=lambda r: (r.scenario, r.algorithm, r.m))
    return rows


def write_csv(rows: Iterable[BenchRow], fh: TextIO, as_float: bool = False) -> None:
    fmt = (lambda x: f"{float(x):.6g}") if as_float else format_fraction
    writer = csv.writer(fh, lineterminator="\r\n")
    writer.writerow(["scenario", "algorithm", "m", "gain", "pct_decrease"])
    for r in rows:
        writer.writerow([r.scenario, r.algorithm, r.m, fmt(r.gain), fmt(r.pct_decrease)])


def read_csv(fh: TextIO) -> list[BenchRow]:
    return [
        BenchRow(row["scenario"], row["algorithm"], int(row["m"]),
                 as_fraction(row["gain"]), as_fraction(row["pct_decrease"]))
        for row in csv.DictReader(fh)
    ]
