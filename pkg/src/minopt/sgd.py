"""Mini-batch gradient-descent driver for separable objectives.

One epoch visits every component function exactly once, in contiguous
batches of config.batch_size (the final batch is smaller when batch_size
does not divide n).  Batch gradients follow the sum convention -- they are
sums, not means, over the batch components -- so the effective step scales
with batch size.  The full objective is recorded once per epoch; trace[0]
is the value at the initial point.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .interface import NonFiniteError, SeparableInterface
from .report import OptimizationReport
from .updates import apply_update, init_state


@dataclass
class SgdConfig:
    """Driver settings.

    max_iterations caps the total number of parameter updates across all
    epochs; 0 means the epoch budget alone decides.  tolerance compares
    successive end-of-epoch full objectives, |f_k - f_{k-1}| < tolerance;
    0.0 disables the check.
    """

    step_size: float = 0.01
    batch_size: int = 1
    max_epochs: int = 100
    max_iterations: int = 0
    tolerance: float = 0.0
    shuffle: bool = True
    seed: int = 0

    def __post_init__(self):
        if not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.tolerance < 0:
            raise ValueError("tolerance must be >= 0")


def shuffle_order(n, rng) -> np.ndarray:
    """Uniform random permutation of range(n) by Fisher-Yates swaps.

    Index draws come from single uniform doubles off `rng` (one per swap),
    so the stream consumed is exactly n-1 values.
    """
    if n < 1:
        raise ValueError("empty function set: n must be >= 1")
    order = np.arange(n)
    draws = rng.random(n - 1)
    for i in range(n - 1, 0, -1):
        j = int(draws[n - 1 - i] * (i + 1))
        order[i], order[j] = order[j], order[i]
    return order


def optimize_separable(function, rule, config, initial, counters=None) -> OptimizationReport:
    """Run `rule` (see updates.RULES) over a separable objective.

    The objective needs batch gradient and evaluate (either native or
    synthesizable from evaluate_with_gradient), plus shuffle when
    config.shuffle is set; anything missing raises UnusableObjectiveError
    before the first iteration.  Non-finite values terminate the run with
    termination_reason "non_finite".
    """
    required = ("evaluate", "gradient", "shuffle") if config.shuffle else ("evaluate", "gradient")
    iface = SeparableInterface(function, counters=counters, required=required)
    theta = np.array(initial, dtype=float)
    if theta.ndim != 1 or theta.size < 1:
        raise ValueError("initial coordinates must be a non-empty vector")
    if not np.isfinite(theta).all():
        raise ValueError("initial coordinates must be finite")

    n = iface.num_functions()
    state = init_state(rule, theta.size)
    rng = np.random.default_rng(config.seed)
    g = np.empty(theta.size)
    trace = []
    reason = "max_epochs"
    updates = 0

    start = time.perf_counter()
    try:
        previous = iface.evaluate(theta, 0, n)
        trace.append((0, previous))
        done = False
        for epoch in range(1, config.max_epochs + 1):
            if config.shuffle:
                iface.shuffle(rng)
            begin = 0
            while begin < n:
                size = min(config.batch_size, n - begin)
                iface.gradient(theta, begin, size, g)
                theta = apply_update(state, theta, g, config.step_size)
                updates += 1
                begin += size
                if config.max_iterations and updates >= config.max_iterations:
                    done = True
                    break
            current = iface.evaluate(theta, 0, n)
            trace.append((epoch, current))
            if config.tolerance > 0 and abs(current - previous) < config.tolerance:
                reason = "tolerance"
                done = True
            previous = current
            if done:
                break
        final = previous if trace else math.nan
    except NonFiniteError:
        reason = "non_finite"
        try:
            final = iface.evaluate(theta, 0, n)
        except NonFiniteError:
            final = math.nan
    wall = time.perf_counter() - start

    return OptimizationReport(
        final_coordinates=theta,
        final_objective=final,
        trace=trace,
        counters=iface.counters,
        wall_time=wall,
        termination_reason=reason,
    )
