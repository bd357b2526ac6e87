"""Cyclic coordinate descent over positive parameters.

Every coordinate is searched in log space, so positivity needs no
constraint handling. A line search brackets the minimum, narrows it with
golden-section steps and finishes with a few Newton steps on a
finite-difference derivative. Golden section alone stalls near
``sqrt(eps)`` relative precision in the argument, which is not enough for a
``1e-10`` derivative criterion.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
FD_STEP = 1e-3


@dataclass(frozen=True)
class Minimum:
    x: tuple
    value: float
    iterations: int
    gradient: tuple  # d f / d log x_i at ``x``
    converged: bool = True


def log_derivative(fun, u, h=FD_STEP):
    """Five-point central difference of ``fun`` at ``u``."""
    return (-fun(u + 2 * h) + 8 * fun(u + h) - 8 * fun(u - h) + fun(u - 2 * h)) / (12 * h)


def _second_derivative(fun, u, f0, h=FD_STEP):
    return (fun(u + h) - 2 * f0 + fun(u - h)) / (h * h)


def _bracket(fun, u0, f0, step=0.5, max_expand=200):
    """Return ``(lo, mid, hi)`` with ``fun(mid)`` below both ends."""
    u1, f1 = u0 + step, fun(u0 + step)
    if f1 > f0:
        u0, u1, f0, f1 = u1, u0, f1, f0
        step = -step
    for _ in range(max_expand):
        step /= INV_PHI
        u2 = u1 + step
        f2 = fun(u2)
        if f2 > f1:
            lo, hi = (u0, u2) if u0 < u2 else (u2, u0)
            return lo, u1, hi
        u0, f0, u1, f1 = u1, f1, u2, f2
    raise ConvergenceError(f"could not bracket a minimum (last point {u1:g})", state=(u1, f1))


def golden_section(fun, lo, hi, width=1e-5, max_iter=500):
    """Shrink ``[lo, hi]`` around the minimum of a unimodal ``fun``."""
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = fun(x2)
    return (x1, f1) if f1 < f2 else (x2, f2)


def line_minimize(fun, u0, tol):
    """Minimize a 1-D function of ``u`` starting from ``u0``."""
    f0 = fun(u0)
    lo, mid, hi = _bracket(fun, u0, f0)
    u, fu = golden_section(fun, lo, hi)
    for _ in range(50):
        g = log_derivative(fun, u)
        if abs(g) <= 0.1 * tol * max(1.0, abs(fu)):
            break
        curv = _second_derivative(fun, u, fu)
        if not curv > 0:
            break
        u_new = u - g / curv
        f_new = fun(u_new)
        if not (f_new <= fu + 1e-15 * max(1.0, abs(fu)) or abs(log_derivative(fun, u_new)) < abs(g)):
            break
        u, fu = u_new, f_new
    return u, fu


def numeric_minimize(objective, start, tol=1e-10, max_sweeps=10_000):
    """Minimize ``objective(*x)`` over positive ``x`` by coordinate descent.

    Converged when every log-space partial derivative has magnitude at most
    ``tol * max(1, |f|)``. Raises :class:`ConvergenceError` carrying the best
    :class:`Minimum` found if ``max_sweeps`` sweeps are not enough.
    """
    start = np.atleast_1d(np.asarray(start, dtype=float))
    if start.ndim != 1 or start.size == 0:
        raise DomainError("start must be a non-empty sequence of widths")
    if not np.all(np.isfinite(start)) or np.any(start <= 0):
        raise DomainError(f"start widths must be positive, got {start.tolist()}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")

    u = np.log(start)

    def partial(i):
        def fun(ui):
            trial = u.copy()
            trial[i] = ui
            return float(objective(*np.exp(trial)))

        return fun

    def gradient():
        return tuple(log_derivative(partial(i), u[i]) for i in range(u.size))

    value = float(objective(*np.exp(u)))
    for sweep in range(1, max_sweeps + 1):
        for i in range(u.size):
            u[i], value = line_minimize(partial(i), u[i], tol)
        grad = gradient()
        if max(abs(g) for g in grad) <= tol * max(1.0, abs(value)):
            return Minimum(tuple(np.exp(u)), value, sweep, grad)
    best = Minimum(tuple(np.exp(u)), value, max_sweeps, grad, converged=False)
    raise ConvergenceError(f"no stationary point within {max_sweeps} sweeps", state=best)
