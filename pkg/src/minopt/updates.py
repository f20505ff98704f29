"""SGD-family update rules with explicit, replayable recurrences.

Each rule maps (state, theta, g, a) -> theta' where g is the batch gradient
and a the step size.  All operations are element-wise; accumulators live in
UpdateState and are updated in place.  The exact recurrences:

  vanilla   theta' = theta - a*g
  adagrad   G += g^2
            theta' = theta - a*g / (sqrt(G) + eps)
  rmsprop   v = decay*v + (1-decay)*g^2
            theta' = theta - a*g / (sqrt(v) + eps)
  adadelta  Eg = rho*Eg + (1-rho)*g^2
            delta = -sqrt((Ed + eps) / (Eg + eps)) * g
            Ed = rho*Ed + (1-rho)*delta^2
            theta' = theta + a*delta
  adam      t += 1
            m = b1*m + (1-b1)*g ;  v = b2*v + (1-b2)*g^2
            theta' = theta - a * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
  adamax    t += 1
            m = b1*m + (1-b1)*g ;  u = max(b2*u, |g|)
            theta' = theta - (a / (1-b1^t)) * m/u   (coordinates with u=0 stay put)
  smorms3   r = 1 / (mem+1)
            g1 = (1-r)*g1 + r*g ;  g2 = (1-r)*g2 + r*g^2
            x = g1^2 / (g2 + eps)
            theta' = theta - g * min(a, x) / (sqrt(g2) + eps)
            mem = 1 + mem*(1-x)          (mem starts at 1)

eps sits outside the square root for adagrad/rmsprop/adam and inside the
ratio for adadelta, matching the original formulations of each method.
"vanilla" is plain constant-step SGD.
"""

from dataclasses import dataclass, field

import numpy as np

DEFAULT_STEP_SIZES = {
    "vanilla": 0.01,
    "adagrad": 0.01,
    "adadelta": 1.0,
    "rmsprop": 0.01,
    "smorms3": 0.001,
    "adam": 0.001,
    "adamax": 0.002,
}

DEFAULT_HYPERPARAMETERS = {
    "vanilla": {},
    "adagrad": {"epsilon": 1e-8},
    "adadelta": {"rho": 0.95, "epsilon": 1e-6},
    "rmsprop": {"decay": 0.99, "epsilon": 1e-8},
    "smorms3": {"epsilon": 1e-16},
    "adam": {"beta1": 0.9, "beta2": 0.999, "epsilon": 1e-8},
    "adamax": {"beta1": 0.9, "beta2": 0.999},
}

RULES = tuple(DEFAULT_STEP_SIZES)

_ACCUMULATORS = {
    "vanilla": (),
    "adagrad": ("sq_sum",),
    "adadelta": ("sq_avg", "delta_sq_avg"),
    "rmsprop": ("sq_avg",),
    "smorms3": ("mem", "grad_avg", "sq_avg"),
    "adam": ("m", "v"),
    "adamax": ("m", "u"),
}


@dataclass
class UpdateState:
    """Mutable per-run state of one update rule on one parameter vector."""

    rule: str
    dimension: int
    accumulators: dict = field(repr=False)
    hyper: dict
    step_count: int = 0


def init_state(rule, dimension, **hyper) -> UpdateState:
    """Fresh UpdateState for `rule` on a `dimension`-vector.

    Keyword arguments override the rule's default hyperparameters; unknown
    names are rejected.  Accumulators start at zero except smorms3's mem,
    which starts at one.
    """
    if rule not in _ACCUMULATORS:
        raise ValueError(f"unknown update rule {rule!r}; expected one of {RULES}")
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    params = dict(DEFAULT_HYPERPARAMETERS[rule])
    unknown = sorted(set(hyper) - set(params))
    if unknown:
        raise ValueError(f"unknown hyperparameters for {rule}: {unknown}")
    params.update(hyper)
    accumulators = {name: np.zeros(dimension) for name in _ACCUMULATORS[rule]}
    if rule == "smorms3":
        accumulators["mem"] = np.ones(dimension)
    return UpdateState(rule=rule, dimension=dimension, accumulators=accumulators, hyper=params)


def apply_update(state, theta, grad, step_size) -> np.ndarray:
    """One optimization step; returns the new parameter vector.

    Mutates state (accumulators, step_count) but never theta or grad.
    Deterministic: identical inputs produce bit-identical outputs.
    """
    theta = np.asarray(theta, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if theta.shape != (state.dimension,) or grad.shape != (state.dimension,):
        raise ValueError(
            f"dimension mismatch: state is {state.dimension}-dimensional, "
            f"got theta {theta.shape} and grad {grad.shape}"
        )
    if not np.isfinite(grad).all():
        raise ValueError("non-finite gradient")
    if not step_size > 0:
        raise ValueError("step size must be positive")
    state.step_count += 1
    return _APPLY[state.rule](state, theta, grad, step_size)


def _vanilla(state, theta, grad, a):
    return theta - a * grad


def _adagrad(state, theta, grad, a):
    eps = state.hyper["epsilon"]
    G = state.accumulators["sq_sum"]
    G += grad * grad
    return theta - a * grad / (np.sqrt(G) + eps)


def _rmsprop(state, theta, grad, a):
    decay = state.hyper["decay"]
    eps = state.hyper["epsilon"]
    v = state.accumulators["sq_avg"]
    v *= decay
    v += (1.0 - decay) * grad * grad
    return theta - a * grad / (np.sqrt(v) + eps)


def _adadelta(state, theta, grad, a):
    rho = state.hyper["rho"]
    eps = state.hyper["epsilon"]
    eg = state.accumulators["sq_avg"]
    ed = state.accumulators["delta_sq_avg"]
    eg *= rho
    eg += (1.0 - rho) * grad * grad
    delta = -np.sqrt((ed + eps) / (eg + eps)) * grad
    ed *= rho
    ed += (1.0 - rho) * delta * delta
    return theta + a * delta


def _adam(state, theta, grad, a):
    h = state.hyper
    b1, b2, eps = h["beta1"], h["beta2"], h["epsilon"]
    m = state.accumulators["m"]
    v = state.accumulators["v"]
    t = state.step_count
    m *= b1
    m += (1.0 - b1) * grad
    v *= b2
    v += (1.0 - b2) * grad * grad
    m_hat = m / (1.0 - b1**t)
    v_hat = v / (1.0 - b2**t)
    return theta - a * m_hat / (np.sqrt(v_hat) + eps)


def _adamax(state, theta, grad, a):
    h = state.hyper
    b1, b2 = h["beta1"], h["beta2"]
    m = state.accumulators["m"]
    u = state.accumulators["u"]
    t = state.step_count
    m *= b1
    m += (1.0 - b1) * grad
    np.maximum(b2 * u, np.abs(grad), out=u)
    # exact division where u > 0; coordinates that never saw gradient stay put
    step = np.divide(m, u, out=np.zeros_like(m), where=u > 0)
    return theta - (a / (1.0 - b1**t)) * step


def _smorms3(state, theta, grad, a):
    eps = state.hyper["epsilon"]
    mem = state.accumulators["mem"]
    g1 = state.accumulators["grad_avg"]
    g2 = state.accumulators["sq_avg"]
    r = 1.0 / (mem + 1.0)
    g1 *= 1.0 - r
    g1 += r * grad
    g2 *= 1.0 - r
    g2 += r * grad * grad
    x = g1 * g1 / (g2 + eps)
    theta_new = theta - grad * np.minimum(a, x) / (np.sqrt(g2) + eps)
    mem *= 1.0 - x
    mem += 1.0
    return theta_new


_APPLY = {
    "vanilla": _vanilla,
    "adagrad": _adagrad,
    "adadelta": _adadelta,
    "rmsprop": _rmsprop,
    "smorms3": _smorms3,
    "adam": _adam,
    "adamax": _adamax,
}
