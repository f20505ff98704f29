"""Run reports, benchmark rows, delimited output, and figure rendering.

Termination reasons used by the drivers:

  mini-batch driver:  "max_epochs", "tolerance", "non_finite"
  l-bfgs:             "grad_tolerance", "max_iterations", "line_search_failed",
                      "non_finite"
  simulated annealing: "budget", "non_finite"
"""

import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .interface import EvaluationCounters

BENCH_HEADER = (
    "problem,optimizer,n,d,seed,iterations,final_objective,wall_time_ms,"
    "n_evaluate,n_gradient,n_ewg,n_expensive"
)
CURVE_HEADER = "optimizer,epoch,objective"


@dataclass
class OptimizationReport:
    """Outcome of one optimizer run.

    trace holds (step, full objective) pairs starting with step 0 at the
    initial point; "step" means epoch for the mini-batch driver, iteration
    for l-bfgs, and temperature sweep (best value so far) for annealing.
    wall_time covers the optimize loop only, in seconds.
    """

    final_coordinates: np.ndarray
    final_objective: float
    trace: list
    counters: EvaluationCounters
    wall_time: float
    termination_reason: str


@dataclass
class BenchResultRow:
    problem: str
    optimizer: str
    n: int
    d: int
    seed: int
    iterations: int
    final_objective: float
    wall_time_ms: float
    n_evaluate: int
    n_gradient: int
    n_evaluate_with_gradient: int
    n_expensive: int

    @classmethod
    def from_report(cls, problem, optimizer, n, d, seed, iterations, report):
        c = report.counters
        return cls(
            problem=problem,
            optimizer=optimizer,
            n=n,
            d=d,
            seed=seed,
            iterations=iterations,
            final_objective=report.final_objective,
            wall_time_ms=report.wall_time * 1000.0,
            n_evaluate=c.n_evaluate,
            n_gradient=c.n_gradient,
            n_evaluate_with_gradient=c.n_evaluate_with_gradient,
            n_expensive=c.n_expensive,
        )


def format_real(value) -> str:
    """17 significant digits: parsing the text back recovers the exact float."""
    return f"{float(value):.17g}"


def _write_lines(lines, path):
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def write_bench_csv(rows, path=None) -> None:
    """Write benchmark rows (header always included); path None -> stdout."""
    lines = [BENCH_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    r.problem,
                    r.optimizer,
                    str(r.n),
                    str(r.d),
                    str(r.seed),
                    str(r.iterations),
                    format_real(r.final_objective),
                    format_real(r.wall_time_ms),
                    str(r.n_evaluate),
                    str(r.n_gradient),
                    str(r.n_evaluate_with_gradient),
                    str(r.n_expensive),
                )
            )
        )
    _write_lines(lines, path)


def write_curve_csv(rows, path=None) -> None:
    """Write learning-curve rows of (optimizer, epoch, objective)."""
    lines = [CURVE_HEADER]
    for name, epoch, objective in rows:
        lines.append(f"{name},{epoch},{format_real(objective)}")
    _write_lines(lines, path)


def render_series_figure(series, path, title, xlabel, ylabel="objective") -> None:
    """Render named series [(label, xs, ys), ...] to an image file.

    Uses a log-scale objective axis when every value is positive.  The
    matplotlib import is local so the plain CSV paths never pay for it.
    """
    from matplotlib.figure import Figure

    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.subplots()
    positive = True
    for label, xs, ys in series:
        ax.plot(xs, ys, marker="o", markersize=2.5, linewidth=1.2, label=label)
        positive = positive and all(y > 0 for y in ys)
    if positive:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if len(series) > 1:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
