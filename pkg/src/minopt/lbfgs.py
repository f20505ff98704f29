"""Limited-memory BFGS with a strong-Wolfe bracket-and-zoom line search.

Value and gradient are always needed together here, so every probe -- the
initial point and each line-search trial -- goes through the adapter's
evaluate_with_gradient.  Objectives providing the combined method natively
therefore pay for shared intermediates once per probe; objectives providing
only the parts pay twice.
"""

import math
import time
from collections import deque
from dataclasses import dataclass

import numpy as np

from .interface import FullInterface, NonFiniteError
from .report import OptimizationReport

# Line-search constants: first trial step, bracket growth per expansion, and
# the largest step ever tried.
INITIAL_TRIAL_STEP = 1.0
BRACKET_GROWTH = 2.0
MAX_STEP = 1e20


@dataclass
class LbfgsConfig:
    memory: int = 10
    max_iterations: int | None = None   # None: run until grad_tolerance
    grad_tolerance: float = 1e-10       # on the max-norm of the gradient
    min_step: float = 1e-20             # zoom gives up below this bracket width
    line_search_c1: float = 1e-4        # sufficient-decrease coefficient
    line_search_c2: float = 0.9         # curvature coefficient
    max_line_search_trials: int = 50

    def __post_init__(self):
        if self.memory < 1:
            raise ValueError("memory must be >= 1")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1, or None for unlimited")
        if self.grad_tolerance < 0:
            raise ValueError("grad_tolerance must be >= 0")
        if not self.min_step > 0:
            raise ValueError("min_step must be positive")
        if not 0 < self.line_search_c1 < self.line_search_c2 < 1:
            raise ValueError("need 0 < c1 < c2 < 1")
        if self.max_line_search_trials < 1:
            raise ValueError("max_line_search_trials must be >= 1")


class LbfgsHistory:
    """Bounded buffer of (s, y, 1/y.s) curvature pairs, oldest first.

    Pairs with y.s <= 0 are skipped (push returns False), which keeps every
    stored rho positive and finite and the implicit Hessian approximation
    positive definite.
    """

    def __init__(self, memory):
        self.pairs = deque(maxlen=memory)

    def __len__(self):
        return len(self.pairs)

    def push(self, s, y) -> bool:
        ys = float(y @ s)
        if not ys > 0.0:
            return False
        self.pairs.append((s, y, 1.0 / ys))
        return True

    def clear(self):
        self.pairs.clear()

    def gamma(self) -> float:
        """Initial inverse-Hessian scale (s.y)/(y.y) from the newest pair."""
        if not self.pairs:
            return 1.0
        s, y, _ = self.pairs[-1]
        return float(s @ y) / float(y @ y)


def two_loop_direction(history, grad) -> np.ndarray:
    """Search direction -H*grad via the two-loop recursion.

    With empty history this is steepest descent -grad; otherwise the initial
    matrix is gamma()*I and the stored pairs are applied newest-first on the
    way down, oldest-first on the way back up.
    """
    q = np.array(grad, dtype=float)
    alphas = []
    for s, y, rho in reversed(history.pairs):
        a = rho * float(s @ q)
        alphas.append(a)
        q -= a * y
    q *= history.gamma()
    for (s, y, rho), a in zip(history.pairs, reversed(alphas)):
        b = rho * float(y @ q)
        q += (a - b) * s
    return -q


def wolfe_line_search(function, x, direction, value, gradient, config):
    """Strong-Wolfe step search: bracketing then bisection zoom.

    `function` must offer evaluate_with_gradient(x, g); every trial costs
    exactly one combined call.  Starts at INITIAL_TRIAL_STEP and doubles
    until the minimum is bracketed (sufficient decrease fails, the value
    stops decreasing, or the slope turns non-negative), then bisects the
    bracket.  Accepts the first step satisfying both

        phi(a) <= phi(0) + c1*a*phi'(0)        (sufficient decrease)
        |phi'(a)| <= c2*|phi'(0)|              (curvature)

    Returns (alpha, value, gradient, ok).  When the trial budget or the
    min_step bracket width is exhausted first, the lowest-value trial seen
    is returned with ok=False so the caller can flag the step.

    Raises ValueError when `direction` is not a descent direction.
    """
    d = direction
    dphi0 = float(gradient @ d)
    if not dphi0 < 0.0:
        raise ValueError("not a descent direction")
    c1 = config.line_search_c1
    c2 = config.line_search_c2
    budget = config.max_line_search_trials

    def probe(alpha):
        g_new = np.empty_like(x)
        phi = function.evaluate_with_gradient(x + alpha * d, g_new)
        return phi, g_new, float(g_new @ d)

    best_alpha, best_phi, best_g = 0.0, value, gradient
    trials = 0

    # Bracketing: expand until the minimum is trapped or a step is accepted.
    prev_alpha, prev_phi, prev_dphi = 0.0, value, dphi0
    alpha = INITIAL_TRIAL_STEP
    bracket = None
    while trials < budget:
        phi, g_new, dphi = probe(alpha)
        trials += 1
        if phi < best_phi:
            best_alpha, best_phi, best_g = alpha, phi, g_new
        if phi > value + c1 * alpha * dphi0 or (trials > 1 and phi >= prev_phi):
            bracket = (prev_alpha, prev_phi, alpha, phi)
            break
        if abs(dphi) <= -c2 * dphi0:
            return alpha, phi, g_new, True
        if dphi >= 0.0:
            bracket = (alpha, phi, prev_alpha, prev_phi)
            break
        prev_alpha, prev_phi, prev_dphi = alpha, phi, dphi
        alpha = min(alpha * BRACKET_GROWTH, MAX_STEP)
    if bracket is None:
        return best_alpha, best_phi, best_g, False

    # Zoom: bisect [lo, hi]; lo always carries the lowest admissible value.
    lo, phi_lo, hi, phi_hi = bracket
    while trials < budget and abs(hi - lo) > config.min_step:
        alpha = 0.5 * (lo + hi)
        phi, g_new, dphi = probe(alpha)
        trials += 1
        if phi < best_phi:
            best_alpha, best_phi, best_g = alpha, phi, g_new
        if phi > value + c1 * alpha * dphi0 or phi >= phi_lo:
            hi, phi_hi = alpha, phi
        else:
            if abs(dphi) <= -c2 * dphi0:
                return alpha, phi, g_new, True
            if dphi * (hi - lo) >= 0.0:
                hi, phi_hi = lo, phi_lo
            lo, phi_lo = alpha, phi
    return best_alpha, best_phi, best_g, False


def optimize_lbfgs(function, config, initial, counters=None) -> OptimizationReport:
    """Minimize a smooth objective with L-BFGS.

    The objective must offer evaluate_with_gradient, natively or synthesized
    from evaluate + gradient; separable objectives are run over the full
    batch.  Iterates until the gradient max-norm drops below
    config.grad_tolerance or config.max_iterations is hit.  A failed line
    search keeps whatever improvement it found and terminates with
    termination_reason "line_search_failed"; non-finite evaluations
    terminate with "non_finite".  The trace is strictly decreasing: a step
    is only taken when it lowers the objective.
    """
    if config is None:
        config = LbfgsConfig()
    iface = FullInterface(function, counters=counters, required=("evaluate_with_gradient",))
    x = np.array(initial, dtype=float)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("initial coordinates must be a non-empty vector")
    if not np.isfinite(x).all():
        raise ValueError("initial coordinates must be finite")

    history = LbfgsHistory(config.memory)
    trace = []
    reason = "max_iterations"
    f = math.nan
    g = np.empty_like(x)

    start = time.perf_counter()
    try:
        f = iface.evaluate_with_gradient(x, g)
        trace.append((0, f))
        iteration = 0
        while True:
            if float(np.max(np.abs(g))) < config.grad_tolerance:
                reason = "grad_tolerance"
                break
            if config.max_iterations is not None and iteration >= config.max_iterations:
                reason = "max_iterations"
                break
            d = two_loop_direction(history, g)
            if not float(g @ d) < 0.0:
                # stale curvature produced a non-descent direction; restart
                history.clear()
                d = -g
            alpha, f_new, g_new, ok = wolfe_line_search(iface, x, d, f, g, config)
            if not ok and not (alpha > 0.0 and f_new < f):
                reason = "line_search_failed"
                break
            history.push(alpha * d, g_new - g)
            x = x + alpha * d
            f = f_new
            g = g_new
            iteration += 1
            trace.append((iteration, f))
            if not ok:
                reason = "line_search_failed"
                break
    except NonFiniteError:
        reason = "non_finite"
    wall = time.perf_counter() - start

    return OptimizationReport(
        final_coordinates=x,
        final_objective=f,
        trace=trace,
        counters=iface.counters,
        wall_time=wall,
        termination_reason=reason,
    )
