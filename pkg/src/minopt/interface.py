"""Objective-function vocabulary, capability detection, and method synthesis.

An objective is any object providing some subset of a small method
vocabulary.  Full-batch objectives:

    evaluate(x) -> float
    gradient(x, g) -> None                    # writes the gradient into g
    evaluate_with_gradient(x, g) -> float     # value returned, gradient into g

Separable objectives (f(x) = sum_i f_i(x) over num_functions() components)
use batch variants plus two utility methods:

    evaluate(x, begin, size) -> float
    gradient(x, begin, size, g) -> None
    evaluate_with_gradient(x, begin, size, g) -> float
    num_functions() -> int
    shuffle(rng) -> None

Optimizers never call user objects directly.  They wrap them in
FullInterface / SeparableInterface, which detect once (not per call) what
the object provides and synthesize whatever is missing:

  * evaluate from evaluate_with_gradient (the gradient is discarded, never
    cached -- a later gradient call at the same point recomputes),
  * gradient from evaluate_with_gradient (the value is discarded),
  * evaluate_with_gradient from gradient + evaluate, called in turn.

Every adapter call increments the counter of the *native* method actually
invoked, so instrumented objectives can measure what synthesis costs.
Non-finite values or gradient entries abort the run immediately via
NonFiniteError rather than letting NaN propagate silently.
"""

import math
import types
from dataclasses import dataclass

import numpy as np

VOCABULARY = ("evaluate", "gradient", "evaluate_with_gradient")


class UnusableObjectiveError(TypeError):
    """Objective does not provide (or allow synthesizing) a required method."""


class NonFiniteError(ArithmeticError):
    """An evaluation produced NaN or Inf."""


@dataclass
class EvaluationCounters:
    """Monotone per-run call counters.

    n_expensive counts problem-defined expensive intermediates (for the
    built-in linear regression: residual computations), which is what makes
    the cost of synthesized methods measurable.
    """

    n_evaluate: int = 0
    n_gradient: int = 0
    n_evaluate_with_gradient: int = 0
    n_expensive: int = 0


@dataclass(frozen=True)
class ObjectiveCapabilities:
    """What an objective natively provides; num_functions is 0 unless separable."""

    has_evaluate: bool
    has_gradient: bool
    has_evaluate_with_gradient: bool
    is_separable: bool
    num_functions: int


def detect_capabilities(function) -> ObjectiveCapabilities:
    """Reflect on which vocabulary methods `function` natively provides.

    Raises UnusableObjectiveError when none of evaluate / gradient /
    evaluate_with_gradient is present.
    """
    provided = [name for name in VOCABULARY if callable(getattr(function, name, None))]
    if not provided:
        raise UnusableObjectiveError(
            "unusable objective: %s provides none of %s"
            % (type(function).__name__, "/".join(VOCABULARY))
        )
    separable = callable(getattr(function, "num_functions", None))
    n = int(function.num_functions()) if separable else 0
    if separable and n < 1:
        raise UnusableObjectiveError("separable objective must report num_functions() >= 1")
    return ObjectiveCapabilities(
        has_evaluate="evaluate" in provided,
        has_gradient="gradient" in provided,
        has_evaluate_with_gradient="evaluate_with_gradient" in provided,
        is_separable=separable,
        num_functions=n,
    )


def _satisfiable(caps: ObjectiveCapabilities) -> dict:
    """Which vocabulary methods can be offered, given what is native."""
    return {
        "evaluate": caps.has_evaluate or caps.has_evaluate_with_gradient,
        "gradient": caps.has_gradient or caps.has_evaluate_with_gradient,
        "evaluate_with_gradient": caps.has_evaluate_with_gradient
        or (caps.has_evaluate and caps.has_gradient),
    }


def _provided_names(caps: ObjectiveCapabilities):
    return [name for name, flag in zip(
        VOCABULARY,
        (caps.has_evaluate, caps.has_gradient, caps.has_evaluate_with_gradient),
    ) if flag]


def _cannot_synthesize(name, caps):
    provided = ", ".join(_provided_names(caps)) or "nothing"
    return UnusableObjectiveError(
        f"cannot synthesize {name}: objective provides {provided}"
    )


class FullInterface:
    """Complete full-batch view of an objective.

    After construction, evaluate / gradient / evaluate_with_gradient are all
    callable (native where available, synthesized where not).  `required`
    names the methods the caller will actually use; anything unsatisfiable
    among them raises UnusableObjectiveError here, before any iteration
    runs.  Non-required but unsatisfiable methods raise only when called.

    Separable objectives are accepted too: they are wrapped in their
    full-batch view first.

    If `counters` is omitted, the wrapped object's own `counters` attribute
    is adopted when it has one, so problem instrumentation (n_expensive) and
    adapter call counts land in one place.
    """

    def __init__(self, function, counters=None, required=()):
        if counters is None:
            candidate = getattr(function, "counters", None)
            counters = candidate if isinstance(candidate, EvaluationCounters) else EvaluationCounters()
        caps = detect_capabilities(function)
        if caps.is_separable:
            function = full_batch_view(function)
            caps = detect_capabilities(function)
        self.function = function
        self.capabilities = caps
        self.counters = counters
        self._scratch = None

        offered = _satisfiable(caps)
        missing = [name for name in required if not offered.get(name, False)]
        if missing:
            provided = ", ".join(_provided_names(caps)) or "nothing"
            raise UnusableObjectiveError(
                "objective is missing required capabilities: "
                f"needs {', '.join(missing)}; provides {provided}"
            )

        if caps.has_evaluate:
            self.evaluate = self._evaluate_native
        elif caps.has_evaluate_with_gradient:
            self.evaluate = self._evaluate_from_combined
        else:
            self.evaluate = self._raiser("evaluate")

        if caps.has_gradient:
            self.gradient = self._gradient_native
        elif caps.has_evaluate_with_gradient:
            self.gradient = self._gradient_from_combined
        else:
            self.gradient = self._raiser("gradient")

        if caps.has_evaluate_with_gradient:
            self.evaluate_with_gradient = self._combined_native
        elif caps.has_evaluate and caps.has_gradient:
            self.evaluate_with_gradient = self._combined_from_parts
        else:
            self.evaluate_with_gradient = self._raiser("evaluate_with_gradient")

    def _raiser(self, name):
        def unusable(*args, **kwargs):
            raise _cannot_synthesize(name, self.capabilities)

        return unusable

    def _check_value(self, value, x):
        if not math.isfinite(value):
            raise NonFiniteError(f"non-finite objective value {value!r} at x={x!r}")
        return value

    def _check_gradient(self, g, x):
        if not np.isfinite(g).all():
            raise NonFiniteError(f"non-finite gradient at x={x!r}")

    def _grad_scratch(self, d):
        if self._scratch is None or len(self._scratch) != d:
            self._scratch = np.empty(d)
        return self._scratch

    def _evaluate_native(self, x):
        self.counters.n_evaluate += 1
        return self._check_value(float(self.function.evaluate(x)), x)

    def _evaluate_from_combined(self, x):
        # the gradient part of the combined call is discarded, not cached
        self.counters.n_evaluate_with_gradient += 1
        g = self._grad_scratch(len(x))
        return self._check_value(float(self.function.evaluate_with_gradient(x, g)), x)

    def _gradient_native(self, x, g):
        self.counters.n_gradient += 1
        self.function.gradient(x, g)
        self._check_gradient(g, x)

    def _gradient_from_combined(self, x, g):
        self.counters.n_evaluate_with_gradient += 1
        self.function.evaluate_with_gradient(x, g)  # value discarded
        self._check_gradient(g, x)

    def _combined_native(self, x, g):
        self.counters.n_evaluate_with_gradient += 1
        value = float(self.function.evaluate_with_gradient(x, g))
        self._check_value(value, x)
        self._check_gradient(g, x)
        return value

    def _combined_from_parts(self, x, g):
        # exactly one gradient plus one evaluate, in turn
        self.counters.n_gradient += 1
        self.function.gradient(x, g)
        self.counters.n_evaluate += 1
        value = float(self.function.evaluate(x))
        self._check_value(value, x)
        self._check_gradient(g, x)
        return value


class SeparableInterface:
    """Complete batch view of a separable objective.

    Same synthesis rules as FullInterface, applied to the batch signatures
    (x, begin, size[, g]).  Batch bounds are validated on every call.
    `required` may also name "shuffle", which cannot be synthesized.
    """

    def __init__(self, function, counters=None, required=()):
        if counters is None:
            candidate = getattr(function, "counters", None)
            counters = candidate if isinstance(candidate, EvaluationCounters) else EvaluationCounters()
        caps = detect_capabilities(function)
        if not caps.is_separable:
            raise UnusableObjectiveError(
                "not separable: objective must provide num_functions()"
            )
        self.function = function
        self.capabilities = caps
        self.counters = counters
        self._n = caps.num_functions
        self._scratch = None
        self._can_shuffle = callable(getattr(function, "shuffle", None))

        offered = _satisfiable(caps)
        offered["shuffle"] = self._can_shuffle
        missing = [name for name in required if not offered.get(name, False)]
        if missing:
            provided = ", ".join(_provided_names(caps)) or "nothing"
            raise UnusableObjectiveError(
                "separable objective is missing required capabilities: "
                f"needs {', '.join(missing)}; provides {provided}"
            )

        if caps.has_evaluate:
            self.evaluate = self._evaluate_native
        elif caps.has_evaluate_with_gradient:
            self.evaluate = self._evaluate_from_combined
        else:
            self.evaluate = self._raiser("evaluate")

        if caps.has_gradient:
            self.gradient = self._gradient_native
        elif caps.has_evaluate_with_gradient:
            self.gradient = self._gradient_from_combined
        else:
            self.gradient = self._raiser("gradient")

        if caps.has_evaluate_with_gradient:
            self.evaluate_with_gradient = self._combined_native
        elif caps.has_evaluate and caps.has_gradient:
            self.evaluate_with_gradient = self._combined_from_parts
        else:
            self.evaluate_with_gradient = self._raiser("evaluate_with_gradient")

    def num_functions(self) -> int:
        return self._n

    def shuffle(self, rng) -> None:
        if not self._can_shuffle:
            raise _cannot_synthesize("shuffle", self.capabilities)
        self.function.shuffle(rng)

    def _raiser(self, name):
        def unusable(*args, **kwargs):
            raise _cannot_synthesize(name, self.capabilities)

        return unusable

    def _check_batch(self, begin, size):
        if size < 1:
            raise ValueError("empty batch: size must be >= 1")
        if begin < 0 or begin + size > self._n:
            raise ValueError(
                f"batch out of range: begin={begin}, size={size}, num_functions={self._n}"
            )

    def _check_value(self, value, x):
        if not math.isfinite(value):
            raise NonFiniteError(f"non-finite objective value {value!r} at x={x!r}")
        return value

    def _check_gradient(self, g, x):
        if not np.isfinite(g).all():
            raise NonFiniteError(f"non-finite gradient at x={x!r}")

    def _grad_scratch(self, d):
        if self._scratch is None or len(self._scratch) != d:
            self._scratch = np.empty(d)
        return self._scratch

    def _evaluate_native(self, x, begin, size):
        self._check_batch(begin, size)
        self.counters.n_evaluate += 1
        return self._check_value(float(self.function.evaluate(x, begin, size)), x)

    def _evaluate_from_combined(self, x, begin, size):
        self._check_batch(begin, size)
        self.counters.n_evaluate_with_gradient += 1
        g = self._grad_scratch(len(x))
        return self._check_value(
            float(self.function.evaluate_with_gradient(x, begin, size, g)), x
        )

    def _gradient_native(self, x, begin, size, g):
        self._check_batch(begin, size)
        self.counters.n_gradient += 1
        self.function.gradient(x, begin, size, g)
        self._check_gradient(g, x)

    def _gradient_from_combined(self, x, begin, size, g):
        self._check_batch(begin, size)
        self.counters.n_evaluate_with_gradient += 1
        self.function.evaluate_with_gradient(x, begin, size, g)  # value discarded
        self._check_gradient(g, x)

    def _combined_native(self, x, begin, size, g):
        self._check_batch(begin, size)
        self.counters.n_evaluate_with_gradient += 1
        value = float(self.function.evaluate_with_gradient(x, begin, size, g))
        self._check_value(value, x)
        self._check_gradient(g, x)
        return value

    def _combined_from_parts(self, x, begin, size, g):
        self._check_batch(begin, size)
        self.counters.n_gradient += 1
        self.function.gradient(x, begin, size, g)
        self.counters.n_evaluate += 1
        value = float(self.function.evaluate(x, begin, size))
        self._check_value(value, x)
        self._check_gradient(g, x)
        return value


class _FullBatchView:
    """Non-separable facade over a separable objective.

    Every call runs the whole batch {0..n-1}.  Only the methods the
    underlying object natively provides are mirrored, so capability
    detection on the view matches the underlying object; wrap the view in
    FullInterface to synthesize the rest.  A `counters` attribute is
    propagated for instrumentation.
    """

    def __init__(self, function):
        caps = detect_capabilities(function)
        if not caps.is_separable:
            raise UnusableObjectiveError(
                "not separable: full_batch_view needs num_functions()"
            )
        n = caps.num_functions
        if caps.has_evaluate:
            self.evaluate = lambda x: function.evaluate(x, 0, n)
        if caps.has_gradient:
            self.gradient = lambda x, g: function.gradient(x, 0, n, g)
        if caps.has_evaluate_with_gradient:
            self.evaluate_with_gradient = (
                lambda x, g: function.evaluate_with_gradient(x, 0, n, g)
            )
        counters = getattr(function, "counters", None)
        if isinstance(counters, EvaluationCounters):
            self.counters = counters


def full_batch_view(function):
    """Adapt a separable objective so any full-batch optimizer can consume it."""
    return _FullBatchView(function)


def expose_only(function, *names):
    """Facade providing only the named methods of `function`.

    Used to exercise specific synthesis routes (and the benchmark's
    combined-versus-separate modes).  A `counters` attribute is propagated
    when the underlying object is instrumented.
    """
    view = types.SimpleNamespace()
    for name in names:
        attr = getattr(function, name, None)
        if not callable(attr):
            raise AttributeError(f"{type(function).__name__} has no method {name!r}")
        setattr(view, name, attr)
    counters = getattr(function, "counters", None)
    if isinstance(counters, EvaluationCounters):
        view.counters = counters
    return view


def synthesize_evaluate(function, counters=None):
    """A plain evaluate(x) for `function`, synthesized if not native."""
    return FullInterface(function, counters, required=("evaluate",)).evaluate


def synthesize_gradient(function, counters=None):
    """A plain gradient(x, g) for `function`, synthesized if not native."""
    return FullInterface(function, counters, required=("gradient",)).gradient


def synthesize_evaluate_with_gradient(function, counters=None):
    """A combined evaluate_with_gradient(x, g), synthesized if not native."""
    return FullInterface(
        function, counters, required=("evaluate_with_gradient",)
    ).evaluate_with_gradient


def numerical_gradient(function, x, h=1e-6):
    """Central-difference gradient, the testing oracle for analytic gradients.

    Works for any objective with a native or synthesizable evaluate;
    separable objectives are evaluated over the full batch.  Non-finite
    evaluations at the perturbed points raise NonFiniteError.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    evaluate = FullInterface(function, required=("evaluate",)).evaluate
    x = np.asarray(x, dtype=float)
    g = np.empty(len(x))
    for i in range(len(x)):
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (evaluate(xp) - evaluate(xm)) / (2.0 * h)
    return g
