"""Built-in objectives and datasets.

The canonical 2-D Rosenbrock function, least-squares linear regression in
full-batch and separable forms, synthetic data generation, and CSV dataset
I/O.  The regression objectives are instrumented: every residual
computation (the expensive intermediate both the value and the gradient
need) bumps counters.n_expensive, so the saving from a combined
evaluate_with_gradient is measurable.
"""

import csv

import numpy as np

from .interface import EvaluationCounters
from .sgd import shuffle_order

ROSENBROCK_START = (-1.2, 1.0)


class DatasetFormatError(ValueError):
    """A dataset file could not be parsed; the message locates the problem."""


class RosenbrockFunction:
    """f(x) = 100*(x2 - x1^2)^2 + (1 - x1)^2, minimum 0 at (1, 1).

    This is the standard form with a squared *linear* term (1 - x1)^2; some
    write-ups misprint it as (1 - x1^2).  Scalar arithmetic throughout --
    the function sits in annealing's inner loop, where numpy overhead on
    2-vectors would dominate.
    """

    def evaluate(self, x) -> float:
        if len(x) != 2:
            raise ValueError("dimension mismatch: Rosenbrock is 2-D")
        x1 = float(x[0])
        x2 = float(x[1])
        t = x2 - x1 * x1
        u = 1.0 - x1
        return 100.0 * t * t + u * u

    def gradient(self, x, g) -> None:
        if len(x) != 2 or len(g) != 2:
            raise ValueError("dimension mismatch: Rosenbrock is 2-D")
        x1 = float(x[0])
        x2 = float(x[1])
        t = x2 - x1 * x1
        g[0] = -400.0 * x1 * t - 2.0 * (1.0 - x1)
        g[1] = 200.0 * t


class SeparableDataset:
    """Dense regression data: X rows are samples, y the responses."""

    def __init__(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        if X.ndim != 2 or y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise ValueError(
                f"dimension mismatch: X is {X.shape}, y is {y.shape}"
            )
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("dataset needs at least one sample and one feature")
        if not (np.isfinite(X).all() and np.isfinite(y).all()):
            raise ValueError("dataset entries must be finite")
        self.X = X
        self.y = y

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]


class LinearRegressionFunction:
    """Full-batch least squares: f(theta) = ||y - X theta||^2.

    Gradient is -2 X^T (y - X theta).  All three vocabulary methods are
    native.  evaluate_with_gradient computes the residual y - X theta once
    and reuses it for both outputs; separate evaluate and gradient calls
    each recompute it, which is exactly what n_expensive records.
    """

    def __init__(self, data, counters=None):
        self.data = data
        self.counters = counters if counters is not None else EvaluationCounters()

    def _residual(self, theta):
        if len(theta) != self.data.d:
            raise ValueError(
                f"dimension mismatch: expected {self.data.d} coordinates, got {len(theta)}"
            )
        self.counters.n_expensive += 1
        return self.data.y - self.data.X @ theta

    def evaluate(self, theta) -> float:
        r = self._residual(theta)
        return float(r @ r)

    def gradient(self, theta, g) -> None:
        r = self._residual(theta)
        g[:] = -2.0 * (self.data.X.T @ r)

    def evaluate_with_gradient(self, theta, g) -> float:
        r = self._residual(theta)  # one residual for both outputs
        g[:] = -2.0 * (self.data.X.T @ r)
        return float(r @ r)


class SeparableLinearRegression:
    """Separable view of least squares: component i is (y_i - x_i.theta)^2.

    Batch calls sum components begin..begin+size-1 of the current sample
    order; shuffle permutes that order in place.  Batch gradients follow the
    sum convention.  Each batch residual counts as one expensive step.
    """

    def __init__(self, data, counters=None):
        self.data = data
        self.counters = counters if counters is not None else EvaluationCounters()
        self._order = np.arange(data.n)

    def num_functions(self) -> int:
        return self.data.n

    def shuffle(self, rng) -> None:
        self._order = self._order[shuffle_order(self._order.size, rng)]

    def _batch_residual(self, theta, begin, size):
        if size < 1:
            raise ValueError("empty batch: size must be >= 1")
        if begin < 0 or begin + size > self.data.n:
            raise ValueError(
                f"batch out of range: begin={begin}, size={size}, n={self.data.n}"
            )
        if len(theta) != self.data.d:
            raise ValueError(
                f"dimension mismatch: expected {self.data.d} coordinates, got {len(theta)}"
            )
        idx = self._order[begin:begin + size]
        Xb = self.data.X[idx]
        self.counters.n_expensive += 1
        return Xb, self.data.y[idx] - Xb @ theta

    def evaluate(self, theta, begin, size) -> float:
        _, r = self._batch_residual(theta, begin, size)
        return float(r @ r)

    def gradient(self, theta, begin, size, g) -> None:
        Xb, r = self._batch_residual(theta, begin, size)
        g[:] = -2.0 * (Xb.T @ r)

    def evaluate_with_gradient(self, theta, begin, size, g) -> float:
        Xb, r = self._batch_residual(theta, begin, size)
        g[:] = -2.0 * (Xb.T @ r)
        return float(r @ r)


def linreg_separable_view(data, counters=None) -> SeparableLinearRegression:
    """Separable least-squares objective over `data`."""
    return SeparableLinearRegression(data, counters)


def generate_synthetic(n, d, noise_sigma=1.0, seed=0) -> SeparableDataset:
    """Random regression data with a planted linear pattern.

    X and the ground-truth coefficients have standard-normal entries and
    y = X theta* + noise_sigma * standard normal noise.  The draw order off
    np.random.default_rng(seed) is fixed -- X (n*d values), theta* (d),
    noise (n) -- so a given seed always yields the same dataset and tests
    can replay theta*.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be >= 0")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, d))
    theta_star = rng.standard_normal(d)
    y = X @ theta_star + noise_sigma * rng.standard_normal(n)
    return SeparableDataset(X, y)


def standardize(data) -> SeparableDataset:
    """Z-score the feature columns and the responses.

    Constant columns are centered but left unscaled.  Helps when feature
    scales vary wildly and a single step size has to serve all coordinates.
    """
    x_std = data.X.std(axis=0)
    x_std = np.where(x_std == 0.0, 1.0, x_std)
    y_std = data.y.std()
    y_std = y_std if y_std > 0.0 else 1.0
    return SeparableDataset(
        (data.X - data.X.mean(axis=0)) / x_std,
        (data.y - data.y.mean()) / y_std,
    )


def load_csv(path, has_header=False) -> SeparableDataset:
    """Read a dataset of `response,feature1,...,featureD` rows.

    No header by default; pass has_header=True to skip the first row.
    Parse failures raise DatasetFormatError naming the row and column.
    """
    rows = []
    width = None
    with open(path, newline="") as fh:
        for rownum, cells in enumerate(csv.reader(fh), start=1):
            if rownum == 1 and has_header:
                continue
            if not cells:
                continue  # blank line
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise DatasetFormatError(
                    f"{path}: inconsistent column count at row {rownum} "
                    f"(expected {width}, got {len(cells)})"
                )
            try:
                rows.append([float(cell) for cell in cells])
            except ValueError:
                for colnum, cell in enumerate(cells, start=1):
                    try:
                        float(cell)
                    except ValueError:
                        raise DatasetFormatError(
                            f"{path}: non-numeric value {cell!r} at row {rownum}, "
                            f"column {colnum}"
                        ) from None
    if not rows:
        raise DatasetFormatError(f"{path}: empty dataset")
    if width < 2:
        raise DatasetFormatError(
            f"{path}: need a response column plus at least one feature column"
        )
    values = np.array(rows)
    try:
        return SeparableDataset(values[:, 1:], values[:, 0])
    except ValueError as exc:
        raise DatasetFormatError(f"{path}: {exc}") from None


def save_csv(data, path) -> None:
    """Inverse of load_csv; values are written with repr so reloading is exact."""
    with open(path, "w") as fh:
        for xi, yi in zip(data.X, data.y):
            fh.write(",".join([repr(float(yi))] + [repr(float(v)) for v in xi]))
            fh.write("\n")
