"""Simulated annealing: gradient-free minimization under an evaluation budget.

Proposals perturb one coordinate at a time, round-robin, by a uniform draw
from [-move_scale, +move_scale].  Moves are accepted by the Metropolis rule
at the current temperature; after every sweep of moves_per_temperature
proposals the temperature is multiplied by cooling_factor.  The best point
ever visited is reported, not the final random walk position.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .interface import FullInterface, NonFiniteError
from .report import OptimizationReport


@dataclass
class SaConfig:
    """Annealing settings.

    max_evaluations budgets objective calls, counting the initial one.
    initial_temperature may be 0, which degenerates to hill climbing (only
    non-worsening moves accepted).  moves_per_temperature defaults to the
    problem dimension (one proposal per coordinate per sweep); move_scale
    may be a scalar or a per-coordinate vector.
    """

    max_evaluations: int = 100_000
    initial_temperature: float = 10_000.0
    cooling_factor: float = 0.999
    moves_per_temperature: int | None = None
    move_scale: object = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be >= 1")
        if self.initial_temperature < 0 or not math.isfinite(self.initial_temperature):
            raise ValueError("initial_temperature must be finite and >= 0")
        if not 0 < self.cooling_factor < 1:
            raise ValueError("cooling_factor must be in (0, 1)")
        if self.moves_per_temperature is not None and self.moves_per_temperature < 1:
            raise ValueError("moves_per_temperature must be >= 1")


def accept_move(delta, temperature, u) -> bool:
    """Metropolis acceptance for a proposed objective change `delta`.

    Non-worsening moves (delta <= 0) always pass.  Worsening moves pass when
    u < exp(-delta/temperature), u being a uniform [0, 1) draw; at zero
    temperature they never do.
    """
    if delta <= 0.0:
        return True
    if temperature <= 0.0:
        return False
    return u < math.exp(-delta / temperature)


def cool(temperature, cooling_factor) -> float:
    """One cooling-schedule step."""
    return temperature * cooling_factor


def optimize_sa(function, config, initial, counters=None) -> OptimizationReport:
    """Anneal from `initial` until the evaluation budget is spent.

    Only evaluate is needed (native or synthesized).  trace records
    (sweep, best value so far) with entry 0 at the initial point.  The run
    uses exactly config.max_evaluations objective calls; a non-finite value
    at the initial point is an error, later ones end the run with
    termination_reason "non_finite" and the best point found.
    """
    if config is None:
        config = SaConfig()
    iface = FullInterface(function, counters=counters, required=("evaluate",))
    evaluate = iface.evaluate
    x = np.array(initial, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("initial coordinates must be a non-empty vector")
    if not np.isfinite(x).all():
        raise ValueError("initial coordinates must be finite")
    d = x.size
    scale = np.broadcast_to(np.asarray(config.move_scale, dtype=float), (d,)).copy()
    if not (np.isfinite(scale).all() and (scale > 0).all()):
        raise ValueError("move_scale must be positive and finite")
    moves = config.moves_per_temperature if config.moves_per_temperature else d
    budget = config.max_evaluations
    rng = np.random.default_rng(config.seed)
    rand = rng.random

    start = time.perf_counter()
    try:
        current = evaluate(x)
    except NonFiniteError as exc:
        raise NonFiniteError(f"non-finite objective at initial point: {exc}") from None
    evals = 1
    best = current
    best_x = x.copy()
    temperature = float(config.initial_temperature)
    trace = [(0, best)]
    reason = "budget"
    sweep = 0
    coord = 0
    try:
        while evals < budget:
            for _ in range(moves):
                if evals >= budget:
                    break
                j = coord % d
                coord += 1
                old = x[j]
                x[j] = old + (2.0 * rand() - 1.0) * scale[j]
                candidate = evaluate(x)
                evals += 1
                delta = candidate - current
                # the uniform draw is consumed only when rejection is possible
                u = rand() if delta > 0.0 else 0.0
                if accept_move(delta, temperature, u):
                    current = candidate
                    if current < best:
                        best = current
                        best_x[:] = x
                else:
                    x[j] = old
            sweep += 1
            temperature = cool(temperature, config.cooling_factor)
            trace.append((sweep, best))
    except NonFiniteError:
        reason = "non_finite"
    wall = time.perf_counter() - start

    return OptimizationReport(
        final_coordinates=best_x,
        final_objective=best,
        trace=trace,
        counters=iface.counters,
        wall_time=wall,
        termination_reason=reason,
    )
