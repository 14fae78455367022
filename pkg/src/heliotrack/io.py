"""Readers and writers for step-function and knapsack files.

Step functions are stored as JSON::

    {"quantum_deg": "1", "steps": [{"len": 2, "val": "3/2"}, ...], "meta": {...}}

or as CSV with a ``len,val`` header, the quantum supplied separately.
Rationals are written as canonical ``"p/q"`` strings.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Optional

from .errors import ValidationError
from .oracle import KnapsackInstance
from .stepfn import StepFunction, as_fraction, format_fraction


def step_function_to_json(f: StepFunction, meta: Optional[dict] = None) -> dict:
    return {
        "quantum_deg": format_fraction(f.quantum),
        "steps": [{"len": ln, "val": format_fraction(v)} for ln, v in f.pairs()],
        "meta": meta or {},
    }


def step_function_from_json(data: dict) -> tuple[StepFunction, dict]:
    if not isinstance(data, dict) or "steps" not in data:
        raise ValidationError("step-function JSON needs a 'steps' list")
    try:
        lengths = []
        for s in data["steps"]:
            ln = s["len"]
            if isinstance(ln, bool) or not isinstance(ln, int):
                raise ValidationError(f"step length must be an integer, got {ln!r}")
            lengths.append(ln)
        values = [as_fraction(s["val"]) for s in data["steps"]]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed step entry: {exc}") from exc
    quantum = as_fraction(data.get("quantum_deg", 1))
    return StepFunction(tuple(lengths), tuple(values), quantum), dict(data.get("meta") or {})


def read_step_csv(path, quantum=1) -> StepFunction:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"len", "val"} <= set(reader.fieldnames):
            raise ValidationError(f"{path}: CSV header must contain len,val")
        lengths, values = [], []
        for row in reader:
            try:
                lengths.append(int(row["len"]))
            except ValueError as exc:
                raise ValidationError(f"{path}: bad step length {row['len']!r}") from exc
            values.append(as_fraction(row["val"]))
    return StepFunction(tuple(lengths), tuple(values), as_fraction(quantum))


def write_step_csv(path, f: StepFunction) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["len", "val"])
        for ln, v in f.pairs():
            writer.writerow([ln, format_fraction(v)])


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def read_step_function(path, quantum=None) -> tuple[StepFunction, dict]:
    """Load a step function by extension (``.csv`` or JSON); returns ``(f, meta)``."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return read_step_csv(path, 1 if quantum is None else quantum), {}
    f, meta = step_function_from_json(_load_json(path))
    if quantum is not None and as_fraction(quantum) != f.quantum:
        raise ValidationError(f"{path}: file quantum {f.quantum} differs from {quantum}")
    return f, meta


def write_step_function(path, f: StepFunction, meta: Optional[dict] = None) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        write_step_csv(path, f)
        return
    with open(path, "w") as fh:
        json.dump(step_function_to_json(f, meta), fh, indent=2)
        fh.write("\n")


def read_knapsack(path) -> KnapsackInstance:
    return KnapsackInstance.from_json(_load_json(path))


def write_knapsack(path, k: KnapsackInstance) -> None:
    with open(path, "w") as fh:
        json.dump(k.to_json(), fh, indent=2)
        fh.write("\n")
