"""minopt: a small numerical-optimization toolkit.

Objective functions are plain objects exposing any workable subset of a
method vocabulary (evaluate / gradient / evaluate_with_gradient, plus batch
variants for separable sums); adapters synthesize whatever is missing.  On
top of that: SGD-family update rules with a mini-batch driver, L-BFGS with
a strong-Wolfe line search, simulated annealing, built-in benchmark
problems, and a CSV-emitting benchmark CLI (minopt-bench).
"""

from .annealing import SaConfig, accept_move, cool, optimize_sa
from .interface import (
    EvaluationCounters,
    FullInterface,
    NonFiniteError,
    ObjectiveCapabilities,
    SeparableInterface,
    UnusableObjectiveError,
    detect_capabilities,
    expose_only,
    full_batch_view,
    numerical_gradient,
    synthesize_evaluate,
    synthesize_evaluate_with_gradient,
    synthesize_gradient,
)
from .lbfgs import (
    LbfgsConfig,
    LbfgsHistory,
    optimize_lbfgs,
    two_loop_direction,
    wolfe_line_search,
)
from .problems import (
    DatasetFormatError,
    LinearRegressionFunction,
    ROSENBROCK_START,
    RosenbrockFunction,
    SeparableDataset,
    SeparableLinearRegression,
    generate_synthetic,
    linreg_separable_view,
    load_csv,
    save_csv,
    standardize,
)
from .report import (
    BENCH_HEADER,
    CURVE_HEADER,
    BenchResultRow,
    OptimizationReport,
    format_real,
    render_series_figure,
    write_bench_csv,
    write_curve_csv,
)
from .sgd import SgdConfig, optimize_separable, shuffle_order
from .updates import (
    DEFAULT_HYPERPARAMETERS,
    DEFAULT_STEP_SIZES,
    RULES,
    UpdateState,
    apply_update,
    init_state,
)

__version__ = "0.1.0"

__all__ = [
    "BENCH_HEADER",
    "CURVE_HEADER",
    "BenchResultRow",
    "DEFAULT_HYPERPARAMETERS",
    "DEFAULT_STEP_SIZES",
    "DatasetFormatError",
    "EvaluationCounters",
    "FullInterface",
    "LbfgsConfig",
    "LbfgsHistory",
    "LinearRegressionFunction",
    "NonFiniteError",
    "ObjectiveCapabilities",
    "OptimizationReport",
    "ROSENBROCK_START",
    "RULES",
    "RosenbrockFunction",
    "SaConfig",
    "SeparableDataset",
    "SeparableInterface",
    "SeparableLinearRegression",
    "SgdConfig",
    "UnusableObjectiveError",
    "UpdateState",
    "accept_move",
    "apply_update",
    "cool",
    "detect_capabilities",
    "expose_only",
    "format_real",
    "full_batch_view",
    "generate_synthetic",
    "init_state",
    "linreg_separable_view",
    "load_csv",
    "numerical_gradient",
    "optimize_lbfgs",
    "optimize_sa",
    "optimize_separable",
    "render_series_figure",
    "save_csv",
    "shuffle_order",
    "standardize",
    "synthesize_evaluate",
    "synthesize_evaluate_with_gradient",
    "synthesize_gradient",
    "two_loop_direction",
    "wolfe_line_search",
    "write_bench_csv",
    "write_curve_csv",
]
