"""Tests for result rows, delimited output, and figure rendering."""

import math

import numpy as np
import pytest

from minopt import (
    BENCH_HEADER,
    CURVE_HEADER,
    BenchResultRow,
    EvaluationCounters,
    OptimizationReport,
    format_real,
    render_series_figure,
    write_bench_csv,
    write_curve_csv,
)


def make_report(**overrides):
    defaults = dict(
        final_coordinates=np.array([1.0, 2.0]),
        final_objective=0.125,
        trace=[(0, 5.0), (1, 0.125)],
        counters=EvaluationCounters(
            n_evaluate=3, n_gradient=4, n_evaluate_with_gradient=5, n_expensive=6
        ),
        wall_time=0.25,
        termination_reason="max_epochs",
    )
    defaults.update(overrides)
    return OptimizationReport(**defaults)


# ---------------------------------------------------------------------------
# Number formatting
# ---------------------------------------------------------------------------

def test_format_real_round_trips_exactly():
    values = [
        math.pi,
        1.0 / 3.0,
        0.1 + 0.2,
        -6.02214076e23,
        1e-300,
        2.0**-52,
        24.199999999999996,
        0.0,
    ]
    for v in values:
        assert float(format_real(v)) == v


def test_format_real_handles_integral_floats():
    assert float(format_real(100.0)) == 100.0


# ---------------------------------------------------------------------------
# Benchmark rows
# ---------------------------------------------------------------------------

def test_bench_row_from_report():
    row = BenchResultRow.from_report(
        "rosenbrock", "sa", 0, 2, 7, 99, make_report()
    )
    assert row.wall_time_ms == 250.0
    assert (row.n_evaluate, row.n_gradient) == (3, 4)
    assert (row.n_evaluate_with_gradient, row.n_expensive) == (5, 6)
    assert (row.problem, row.optimizer, row.seed, row.iterations) == (
        "rosenbrock",
        "sa",
        7,
        99,
    )


def test_write_bench_csv_header_only_for_empty(capsys):
    write_bench_csv([])
    assert capsys.readouterr().out == BENCH_HEADER + "\n"


def test_write_bench_csv_row_content(tmp_path):
    row = BenchResultRow.from_report("linreg", "lbfgs-ewg", 100, 10, 0, 10, make_report())
    path = tmp_path / "bench.csv"
    write_bench_csv([row], str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == BENCH_HEADER
    cells = lines[1].split(",")
    assert cells[:6] == ["linreg", "lbfgs-ewg", "100", "10", "0", "10"]
    assert float(cells[6]) == 0.125
    assert float(cells[7]) == 250.0
    assert cells[8:] == ["3", "4", "5", "6"]


def test_write_curve_csv(tmp_path):
    path = tmp_path / "curve.csv"
    write_curve_csv([("adam", 0, 5.0), ("adam", 1, 1.0 / 3.0)], str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == CURVE_HEADER
    assert lines[1] == "adam,0,5"
    name, epoch, value = lines[2].split(",")
    assert (name, epoch) == ("adam", "1")
    assert float(value) == 1.0 / 3.0


def test_write_curve_csv_stdout(capsys):
    write_curve_csv([("sgd", 0, 2.0)])
    out = capsys.readouterr().out
    assert out == CURVE_HEADER + "\nsgd,0,2\n"


def test_write_csv_unwritable_path_raises(tmp_path):
    target = str(tmp_path / "missing_dir" / "x.csv")
    with pytest.raises(OSError):
        write_bench_csv([], target)
    with pytest.raises(OSError):
        write_curve_csv([], target)


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------

def test_render_single_series_creates_file(tmp_path):
    path = tmp_path / "fig.png"
    render_series_figure(
        [("lbfgs", [0, 1, 2], [100.0, 10.0, 1.0])],
        str(path),
        title="objective by iteration",
        xlabel="iteration",
    )
    assert path.is_file()
    assert path.stat().st_size > 0


def test_render_multi_series_with_non_positive_values(tmp_path):
    # A zero objective forces the linear-scale branch; two series use the
    # legend branch.
    path = tmp_path / "fig.png"
    render_series_figure(
        [
            ("a", [0, 1], [1.0, 0.0]),
            ("b", [0, 1], [2.0, 1.0]),
        ],
        str(path),
        title="comparison",
        xlabel="epoch",
    )
    assert path.is_file()
    assert path.stat().st_size > 0
