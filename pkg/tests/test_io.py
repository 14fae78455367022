import io
import json
from fractions import Fraction

import pytest

from heliotrack import bench
from heliotrack.errors import EmptyInputError, ValidationError
from heliotrack.io import (
    read_knapsack,
    read_step_function,
    step_function_from_json,
    step_function_to_json,
    write_knapsack,
    write_step_function,
)
from heliotrack.oracle import KnapsackInstance
from heliotrack.stepfn import StepFunction


def test_json_round_trip(tmp_path, f1):
    g = StepFunction((2, 1), (Fraction(3, 2), 0), Fraction(1, 4))
    for f in (f1, g):
        path = tmp_path / "f.json"
        write_step_function(path, f, {"omega": 4})
        back, meta = read_step_function(path)
        assert back == f and meta == {"omega": 4}


def test_rationals_written_as_strings(f1):
    doc = step_function_to_json(StepFunction((1,), (Fraction(2, 3),)))
    assert doc["steps"] == [{"len": 1, "val": "2/3"}]
    assert doc["quantum_deg"] == "1"


def test_csv_round_trip(tmp_path, f2):
    path = tmp_path / "f.csv"
    write_step_function(path, f2)
    assert path.read_text().splitlines()[0] == "len,val"
    assert read_step_function(path)[0] == f2
    assert read_step_function(path, "1/2")[0].quantum == Fraction(1, 2)


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"steps": [{"len": 1.5, "val": 1}]},
        {"steps": [{"len": True, "val": 1}]},
        {"steps": [{"val": 1}]},
        {"steps": [{"len": 1, "val": -2}]},
        {"steps": "nope"},
    ],
)
def test_rejects_malformed_json(doc):
    with pytest.raises(ValidationError):
        step_function_from_json(doc)


def test_rejects_empty_steps():
    with pytest.raises(EmptyInputError):
        step_function_from_json({"steps": []})


def test_rejects_broken_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        read_step_function(bad)
    csv_path = tmp_path / "bad.csv"
    csv_path.write_text("a,b\n1,2\n")
    with pytest.raises(ValidationError):
        read_step_function(csv_path)
    csv_path.write_text("len,val\nx,2\n")
    with pytest.raises(ValidationError):
        read_step_function(csv_path)


def test_quantum_mismatch(tmp_path, f1):
    path = tmp_path / "f.json"
    write_step_function(path, f1)
    with pytest.raises(ValidationError):
        read_step_function(path, "1/2")


def test_knapsack_round_trip(tmp_path):
    k = KnapsackInstance(((2, 3), (3, "5/2")), 5)
    path = tmp_path / "k.json"
    write_knapsack(path, k)
    assert json.loads(path.read_text())["items"][1] == {"w": 3, "a": "5/2"}
    assert read_knapsack(path) == k


def test_bench_csv_round_trip():
    rows = [bench.BenchRow("s", "dp", 3, Fraction(7, 2), Fraction(-1, 3))]
    buf = io.StringIO()
    bench.write_csv(rows, buf)
    assert buf.getvalue().startswith("scenario,algorithm,m,gain,pct_decrease\r\n")
    buf.seek(0)
    assert bench.read_csv(buf) == rows
