"""agekit: software aging trend analysis and rejuvenation simulation.

Pipeline: ingest metric series, LOWESS-smooth them, normalize to a [0,1]
aging degree, fit the kinetic growth law K*exp(alpha*t)*t**beta, and
explore rejuvenation policies in a discrete-time feedback-loop simulator.
"""

from .errors import AgekitError, DomainError, ParseError
from .fitting import (
    FIT_REPORT_HEADER,
    FitReport,
    LMResult,
    fit,
    fit_report_rows,
    levenberg_marquardt,
    r_square,
    rmse,
    write_fit_reports,
)
from .model import (
    FeedbackLoopModel,
    NegativeLoop,
    PositiveLoop,
    eval_combined,
    eval_model,
    eval_multi_loop,
    eval_negative,
    eval_positive,
    ode_residual,
)
from .normalize import AgingCurve, normalize_only, to_aging_curve
from .simulator import (
    NO_POLICY,
    TRACE_HEADER,
    FileDifference,
    FileDist,
    PolicyVariant,
    RejuvenationPolicy,
    SimConfig,
    SimState,
    WorkloadSpec,
    aging_degree,
    aging_level,
    apply_policy_experiment,
    init_state,
    load_sim_config,
    load_trace,
    parse_workload,
    run,
    step,
    trace_csv,
    validate_workload,
    write_trace,
)
from .smoothing import SmoothingConfig, lowess, lowess_values
from .timeseries import (
    CSV_HEADER,
    MetricSeries,
    Orientation,
    load_series,
    rescale_time,
    save_series,
)

__version__ = "0.1.0"

__all__ = [
    "AgekitError",
    "AgingCurve",
    "CSV_HEADER",
    "DomainError",
    "FIT_REPORT_HEADER",
    "FeedbackLoopModel",
    "FileDifference",
    "FileDist",
    "FitReport",
    "LMResult",
    "MetricSeries",
    "NO_POLICY",
    "NegativeLoop",
    "Orientation",
    "ParseError",
    "PolicyVariant",
    "PositiveLoop",
    "RejuvenationPolicy",
    "SimConfig",
    "SimState",
    "SmoothingConfig",
    "TRACE_HEADER",
    "WorkloadSpec",
    "aging_degree",
    "aging_level",
    "apply_policy_experiment",
    "eval_combined",
    "eval_model",
    "eval_multi_loop",
    "eval_negative",
    "eval_positive",
    "fit",
    "fit_report_rows",
    "init_state",
    "levenberg_marquardt",
    "load_series",
    "load_sim_config",
    "load_trace",
    "lowess",
    "lowess_values",
    "normalize_only",
    "ode_residual",
    "parse_workload",
    "r_square",
    "rescale_time",
    "rmse",
    "run",
    "save_series",
    "step",
    "to_aging_curve",
    "trace_csv",
    "validate_workload",
    "write_fit_reports",
    "write_trace",
]
