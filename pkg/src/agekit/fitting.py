"""Least-squares fitting of the kinetic growth law to an aging curve.

Two stages, both in this module because the second is useless without the
first: a linear initializer (ordinary least squares on ln y = ln K + alpha*t
+ beta*ln t over samples safely above zero) and a damped Gauss-Newton refiner
(Levenberg-Marquardt) on the original, untransformed objective

    S(K, alpha, beta) = sum_i (y_i - K * exp(alpha*t_i) * t_i**beta)^2.

Parameters are projected onto K > 0, alpha >= 0, beta >= 0 after every step,
and a step is only accepted when it lowers S, so the accepted-step S sequence
is nonincreasing by construction.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import FeedbackLoopModel, eval_model
from .timeseries import format_float, write_text_atomic

Y_FLOOR = 1e-6  # below this a sample cannot inform the log-space initializer
K_MIN = 1e-12
LAMBDA_START = 1e-3
LAMBDA_MAX = 1e15
LAMBDA_MIN = 1e-15

FIT_REPORT_HEADER = ("name", "K", "alpha", "beta", "rmse", "r_square")


def rmse(observed, predicted):
    """Root mean squared prediction error."""
    observed = np.asarray(observed, dtype=float)
    predicted = np.asarray(predicted, dtype=float)
    if observed.shape != predicted.shape or observed.ndim != 1 or len(observed) == 0:
        raise DomainError("rmse needs two equal-length nonempty vectors")
    residual = predicted - observed
    return float(np.sqrt(np.mean(residual * residual)))


def r_square(observed, predicted):
    """Coefficient of determination, 1 - SS_res/SS_tot. At most 1, may go negative."""
    observed = np.asarray(observed, dtype=float)
    predicted = np.asarray(predicted, dtype=float)
    if observed.shape != predicted.shape or observed.ndim != 1 or len(observed) < 2:
        raise DomainError("r_square needs two equal-length vectors of at least 2 samples")
    mean = observed.mean()
    ss_tot = float(np.sum((observed - mean) ** 2))
    if ss_tot == 0.0:
        raise DomainError("r_square undefined: observed values are all equal")
    ss_res = float(np.sum((observed - predicted) ** 2))
    return 1.0 - ss_res / ss_tot


def _model_and_jacobian(theta, t, log_t):
    K, alpha, beta = theta
    growth = np.exp(alpha * t) * np.exp(beta * log_t)  # exp(alpha*t) * t**beta
    f = K * growth
    jac = np.column_stack((growth, t * f, log_t * f))
    return f, jac


def _project(theta):
    return np.array([max(theta[0], K_MIN), max(theta[1], 0.0), max(theta[2], 0.0)])


@dataclass(frozen=True)
class LMResult:
    """Raw solver outcome: final parameters plus bookkeeping for diagnostics."""

    theta: np.ndarray
    converged: bool
    iterations: int
    ssr_path: tuple  # SSR at start, then after each accepted step


def levenberg_marquardt(t, y, start, max_iterations=200, step_tol=1e-10, gradient_tol=1e-10):
    """Minimize the untransformed SSR from ``start``, clamped to the valid cone.

    Damping starts at 1e-3, grows tenfold on a rejected step and shrinks
    tenfold on an accepted one. Convergence means the relative parameter step
    or the gradient infinity-norm dropped below tolerance.
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    log_t = np.log(t)
    theta = _project(np.asarray(start, dtype=float))
    f, jac = _model_and_jacobian(theta, t, log_t)
    residual = y - f
    ssr = float(residual @ residual)
    ssr_path = [ssr]
    lam = LAMBDA_START
    converged = False
    iterations = 0

    for iterations in range(1, max_iterations + 1):
        gradient = jac.T @ residual
        if np.max(np.abs(gradient)) < gradient_tol:
            converged = True
            iterations -= 1
            break
        hessian = jac.T @ jac
        diag = np.diag(hessian).copy()
        diag[diag <= 0.0] = 1e-30  # keep the damping matrix positive
        accepted = False
        while lam <= LAMBDA_MAX:
            try:
                delta = np.linalg.solve(hessian + lam * np.diag(diag), gradient)
            except np.linalg.LinAlgError:
                delta = np.linalg.lstsq(hessian + lam * np.diag(diag), gradient, rcond=None)[0]
            candidate = _project(theta + delta)
            f_new, jac_new = _model_and_jacobian(candidate, t, log_t)
            residual_new = y - f_new
            ssr_new = float(residual_new @ residual_new)
            if np.isfinite(ssr_new) and ssr_new < ssr:
                step = np.abs(candidate - theta)
                scale = np.maximum(np.abs(candidate), np.abs(theta))
                rel_step = float(np.max(step / np.maximum(scale, 1e-12)))
                theta, f, jac, residual, ssr = candidate, f_new, jac_new, residual_new, ssr_new
                ssr_path.append(ssr)
                lam = max(lam / 10.0, LAMBDA_MIN)
                accepted = True
                if rel_step < step_tol:
                    converged = True
                break
            lam *= 10.0
        if not accepted:
            # damping exhausted without progress: gradient may still be tiny
            converged = converged or np.max(np.abs(jac.T @ residual)) < gradient_tol
            break
        if converged:
            break

    return LMResult(
        theta=theta, converged=converged, iterations=iterations, ssr_path=tuple(ssr_path)
    )


@dataclass(frozen=True)
class FitReport:
    """Fitted growth law plus the goodness-of-fit numbers reported alongside it."""

    model: FeedbackLoopModel
    rmse: float
    r_square: float
    n_samples: int
    converged: bool
    iterations: int


def _initial_guess(t, y):
    usable = y > Y_FLOOR
    count = int(usable.sum())
    if count == 0:
        raise DomainError(
            f"all samples at or below y_floor={Y_FLOOR}; log-space initialization impossible"
        )
    if count < 3:
        raise DomainError(
            f"only {count} samples above y_floor={Y_FLOOR}; need 3 to initialize 3 parameters"
        )
    tm = t[usable]
    design = np.column_stack((np.ones(count), tm, np.log(tm)))
    coef, *_ = np.linalg.lstsq(design, np.log(y[usable]), rcond=None)
    k0 = float(np.exp(np.clip(coef[0], np.log(K_MIN), np.log(1e12))))
    return np.array([k0, max(float(coef[1]), 0.0), max(float(coef[2]), 0.0)])


def fit(curve, max_iterations=200):
    """Fit the growth law to an aging curve and report goodness of fit.

    ``converged=False`` is a report outcome, not an exception; degenerate
    input (constant y, everything under the floor, bad grid) raises.
    """
    t = np.asarray(curve.t, dtype=float)
    y = np.asarray(curve.y, dtype=float)
    if t.ndim != 1 or y.ndim != 1 or len(t) != len(y):
        raise DomainError("fit needs matching one-dimensional t and y")
    if len(t) < 4:
        raise DomainError(f"fit needs at least 4 samples, got {len(t)}")
    if np.any(t <= 0.0) or not np.all(np.diff(t) > 0):
        raise DomainError("fit times must be strictly positive and increasing")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(y))):
        raise DomainError("fit input has non-finite entries")
    if np.all(y == y[0]):
        raise DomainError("degenerate curve: constant aging degree cannot be fitted")

    start = _initial_guess(t, y)
    result = levenberg_marquardt(t, y, start, max_iterations=max_iterations)
    model = FeedbackLoopModel(*(float(p) for p in result.theta))
    predicted = eval_model(model, t)
    return FitReport(
        model=model,
        rmse=rmse(y, predicted),
        r_square=r_square(y, predicted),
        n_samples=len(t),
        converged=result.converged,
        iterations=result.iterations,
    )


def fit_report_rows(named_reports):
    """Render (name, FitReport) pairs as CSV text, Table-1 column order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(FIT_REPORT_HEADER)
    for name, report in named_reports:
        writer.writerow(
            [
                name,
                format_float(report.model.K),
                format_float(report.model.alpha),
                format_float(report.model.beta),
                format_float(report.rmse),
                format_float(report.r_square),
            ]
        )
    return buffer.getvalue()


def write_fit_reports(path, named_reports):
    """Serialize fit reports to CSV atomically."""
    write_text_atomic(path, fit_report_rows(named_reports))
