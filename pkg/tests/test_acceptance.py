"""Acceptance suite: ten end-to-end criteria with stated tolerances.

Each test prints one `criterion NN [PASS|FAIL]` line (run with `pytest -s`
to see them all) and fails loudly when its tolerance is violated.
"""

import math
import statistics
import time

import numpy as np

from minopt import (
    EvaluationCounters,
    FullInterface,
    LbfgsConfig,
    LinearRegressionFunction,
    RosenbrockFunction,
    SaConfig,
    SeparableLinearRegression,
    SgdConfig,
    accept_move,
    expose_only,
    generate_synthetic,
    numerical_gradient,
    optimize_lbfgs,
    optimize_sa,
    optimize_separable,
)
from minopt.cli import main, run_linreg_bench, run_rosenbrock_bench

ROSENBROCK_START_VALUE = 24.2


def _verdict(num, description, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"criterion {num:2d} [{status}] {description}{suffix}")
    assert ok, f"criterion {num} failed: {description}{suffix}"


def test_criterion_01_annealing_budget_fidelity():
    finals = []
    walls = []
    for seed in range(10):
        config = SaConfig(max_evaluations=100_000, seed=seed)
        report = optimize_sa(
            RosenbrockFunction(), config, np.array([-1.2, 1.0])
        )
        finals.append(report.final_objective)
        walls.append(report.wall_time)
    median_final = statistics.median(finals)
    ok = max(walls) <= 1.0 and median_final <= 0.01 * ROSENBROCK_START_VALUE
    _verdict(
        1,
        "100k-evaluation annealing run: <= 1 s and median final <= 1% of start",
        ok,
        f"max wall {max(walls):.3f} s, median final {median_final:.5f}",
    )


def test_criterion_02_lbfgs_scaling_budgets():
    budgets = {1_000: 0.1, 10_000: 0.5, 100_000: 5.0}
    details = []
    ok = True
    for n, budget in budgets.items():
        _, report = run_linreg_bench(n=n, d=100, seed=0, mode="ewg", max_iterations=10)
        values = [v for _, v in report.trace]
        decreasing = len(values) == 11 and all(
            b < a for a, b in zip(values, values[1:])
        )
        ok = ok and decreasing and report.wall_time <= budget
        details.append(f"n={n}: {report.wall_time * 1000:.1f} ms, strict={decreasing}")
    _verdict(
        2,
        "10 L-BFGS iterations at n=1k/10k/100k inside time budgets, strictly decreasing",
        ok,
        "; ".join(details),
    )


def test_criterion_03_combined_call_advantage():
    ewg_expensive, sep_expensive = [], []
    ewg_walls, sep_walls = [], []
    counters_ok = True
    for seed in range(10):
        row_e, report_e = run_linreg_bench(1000, 100, seed, "ewg", 10)
        row_s, report_s = run_linreg_bench(1000, 100, seed, "separate", 10)
        counters_ok = counters_ok and row_e.n_expensive < row_s.n_expensive
        ewg_expensive.append(row_e.n_expensive)
        sep_expensive.append(row_s.n_expensive)
        ewg_walls.append(report_e.wall_time)
        sep_walls.append(report_s.wall_time)
    median_e = statistics.median(ewg_walls)
    median_s = statistics.median(sep_walls)
    time_ok = median_e <= 1.10 * median_s  # equal-within-noise allowance
    _verdict(
        3,
        "combined-call mode beats separate mode on residual count and wall time",
        counters_ok and time_ok,
        f"n_expensive {ewg_expensive[0]} < {sep_expensive[0]}, "
        f"median wall {median_e * 1000:.2f} vs {median_s * 1000:.2f} ms",
    )


def test_criterion_04_adapter_equivalence_and_counter_laws():
    data = generate_synthetic(80, 6, noise_sigma=1.0, seed=17)
    full = LinearRegressionFunction(data)
    native = FullInterface(full)
    parts = FullInterface(expose_only(full, "evaluate", "gradient"))
    combined = FullInterface(expose_only(full, "evaluate_with_gradient"))

    rng = np.random.default_rng(0)
    agree = True
    g = [np.empty(6) for _ in range(3)]
    for _ in range(100):
        theta = rng.standard_normal(6)
        values = [
            native.evaluate_with_gradient(theta, g[0]),
            parts.evaluate_with_gradient(theta, g[1]),
            combined.evaluate_with_gradient(theta, g[2]),
        ]
        scale = max(abs(values[0]), 1.0)
        agree = agree and max(values) - min(values) <= 1e-12 * scale
        grad_scale = max(np.max(np.abs(g[0])), 1.0)
        for other in g[1:]:
            agree = agree and np.max(np.abs(other - g[0])) <= 1e-12 * grad_scale
        values_only = [
            native.evaluate(theta),
            parts.evaluate(theta),
            combined.evaluate(theta),
        ]
        agree = agree and max(values_only) - min(values_only) <= 1e-12 * scale

    law_counters = EvaluationCounters()
    law_parts = FullInterface(
        expose_only(LinearRegressionFunction(data, counters=law_counters),
                    "evaluate", "gradient"),
    )
    theta = np.zeros(6)
    law_parts.evaluate_with_gradient(theta, g[0])
    parts_law = (
        law_counters.n_evaluate,
        law_counters.n_gradient,
        law_counters.n_evaluate_with_gradient,
    ) == (1, 1, 0)

    law_counters2 = EvaluationCounters()
    law_combined = FullInterface(
        expose_only(LinearRegressionFunction(data, counters=law_counters2),
                    "evaluate_with_gradient"),
    )
    law_combined.evaluate(theta)
    combined_law = (
        law_counters2.n_evaluate,
        law_counters2.n_evaluate_with_gradient,
    ) == (0, 1)

    _verdict(
        4,
        "synthesis routes agree to 1e-12 at 100 points; counter laws exact",
        agree and parts_law and combined_law,
        f"parts law {parts_law}, combined law {combined_law}",
    )


def test_criterion_05_gradient_correctness():
    rng = np.random.default_rng(23)
    ok = True
    worst = 0.0

    rosen = RosenbrockFunction()
    g = np.empty(2)
    for _ in range(100):
        x = rng.uniform(-2.0, 2.0, size=2)
        rosen.gradient(x, g)
        numeric = numerical_gradient(rosen, x, h=1e-6)
        err = np.max(np.abs(g - numeric) / np.maximum(1e-8 / 1e-5, np.abs(numeric)))
        gap = np.abs(g - numeric) <= np.maximum(1e-8, 1e-5 * np.abs(numeric))
        ok = ok and bool(gap.all())
        worst = max(worst, float(err))

    data = generate_synthetic(50, 7, noise_sigma=1.0, seed=29)
    linreg = LinearRegressionFunction(data)
    g = np.empty(7)
    for _ in range(100):
        theta = rng.standard_normal(7)
        linreg.gradient(theta, g)
        numeric = numerical_gradient(linreg, theta, h=1e-6)
        gap = np.abs(g - numeric) <= np.maximum(1e-8, 1e-5 * np.abs(numeric))
        ok = ok and bool(gap.all())

    _verdict(
        5,
        "analytic gradients match central differences (1e-5 rel, 1e-8 floor)",
        ok,
        f"worst scaled error {worst:.2e}",
    )


def test_criterion_06_lbfgs_oracle_convergence():
    data = generate_synthetic(100, 10, noise_sigma=0.0, seed=6)
    theta_star, *_ = np.linalg.lstsq(data.X, data.y, rcond=None)
    f = LinearRegressionFunction(data)
    optimum = f.evaluate(theta_star)
    config = LbfgsConfig(max_iterations=None, grad_tolerance=1e-10)
    start = time.perf_counter()
    report = optimize_lbfgs(f, config, np.zeros(10))
    elapsed = time.perf_counter() - start
    gap = abs(report.final_objective - optimum)
    ok = gap <= 1e-10 and elapsed <= 1.0
    _verdict(
        6,
        "L-BFGS reaches the normal-equations optimum within 1e-10 absolute",
        ok,
        f"gap {gap:.2e}, {elapsed * 1000:.1f} ms",
    )


def test_criterion_07_sgd_full_batch_equivalence():
    data = generate_synthetic(60, 8, noise_sigma=1.0, seed=5)
    step = 1e-3
    steps = 100

    theta = np.zeros(8)
    g = np.empty(8)
    oracle_iterates = []
    full = LinearRegressionFunction(data)
    for _ in range(steps):
        oracle_iterates.append(theta.copy())
        full.gradient(theta, g)
        theta = theta - step * g
    oracle_final = theta

    class IterateRecorder:
        def __init__(self, inner):
            self.inner = inner
            self.seen = []

        def num_functions(self):
            return self.inner.num_functions()

        def evaluate(self, theta, begin, size):
            return self.inner.evaluate(theta, begin, size)

        def gradient(self, theta, begin, size, g):
            self.seen.append(theta.copy())
            self.inner.gradient(theta, begin, size, g)

    recorder = IterateRecorder(SeparableLinearRegression(data))
    config = SgdConfig(
        step_size=step, batch_size=data.n, max_epochs=steps, shuffle=False
    )
    report = optimize_separable(recorder, "vanilla", config, np.zeros(8))

    ok = len(recorder.seen) == steps
    worst = 0.0
    for mine, ref in zip(recorder.seen, oracle_iterates):
        worst = max(worst, float(np.max(np.abs(mine - ref))))
    worst = max(worst, float(np.max(np.abs(report.final_coordinates - oracle_final))))
    ok = ok and worst <= 1e-12
    _verdict(
        7,
        "full-batch vanilla run matches an independent GD loop for 100 steps",
        ok,
        f"max coordinate gap {worst:.2e}",
    )


def test_criterion_08_learning_curves(tmp_path, capsys):
    out = tmp_path / "curves.csv"
    start = time.perf_counter()
    code = main(
        [
            "curves",
            "--n", "10000",
            "--d", "50",
            "--epochs", "5",
            "--standardize",
            "--out", str(out),
        ]
    )
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    lines = out.read_text().splitlines()
    data_rows = lines[1:]
    by_name = {}
    for line in data_rows:
        name, epoch, value = line.split(",")
        by_name.setdefault(name, {})[int(epoch)] = float(value)
    improved = all(curve[5] < curve[0] for curve in by_name.values())
    ok = (
        code == 0
        and len(data_rows) == 30
        and len(by_name) == 5
        and improved
        and elapsed <= 10.0
    )
    _verdict(
        8,
        "five optimizers, 5 epochs on n=10k/d=50: all improve, 30 rows, <= 10 s",
        ok,
        f"{elapsed:.2f} s, rows {len(data_rows)}, improved {improved}",
    )


def test_criterion_09_metropolis_statistics():
    rng = np.random.default_rng(1234)
    draws = rng.random(1_000_000)
    accepted = sum(accept_move(1.0, 1.0, u) for u in draws)
    rate = accepted / draws.size
    target = math.exp(-1.0)
    ok = abs(rate - target) <= 0.003
    _verdict(
        9,
        "Metropolis acceptance at delta=T is e^-1 within 0.003 over 1e6 draws",
        ok,
        f"rate {rate:.6f} vs {target:.6f}",
    )


def test_criterion_10_cli_determinism(tmp_path, capsys):
    cases = {
        "rosenbrock": ["rosenbrock", "--max-evals", "5000", "--seed", "1"],
        "linreg": ["linreg", "--n", "300", "--d", "20", "--max-iters", "8", "--seed", "1"],
        "curves": [
            "curves", "--n", "500", "--d", "10", "--epochs", "2",
            "--batch-size", "8", "--seed", "1",
        ],
    }
    wall_column = 7
    ok = True
    details = []
    for name, argv in cases.items():
        outputs = []
        for attempt in range(2):
            path = tmp_path / f"{name}_{attempt}.csv"
            code = main(argv + ["--out", str(path)])
            assert code == 0
            lines = path.read_text().splitlines()
            if name != "curves":
                stripped = [lines[0]]
                for line in lines[1:]:
                    cells = line.split(",")
                    del cells[wall_column]
                    stripped.append(",".join(cells))
                outputs.append("\n".join(stripped))
            else:
                outputs.append("\n".join(lines))
        same = outputs[0] == outputs[1]
        ok = ok and same
        details.append(f"{name}={same}")
    capsys.readouterr()
    _verdict(
        10,
        "each subcommand emits byte-identical output (excluding wall_time_ms)",
        ok,
        ", ".join(details),
    )
