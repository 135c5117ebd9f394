"""Shared numerical kernels: adaptive Simpson quadrature and entropy primitives.

All tolerances used elsewhere in the package live in the constants block
below so that tests can pin them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

# --- tolerances -----------------------------------------------------------
QUAD_ABS_TOL = 1e-10
QUAD_MAX_DEPTH = 40
QUAD_INITIAL_PANELS = 8
QUAD_MAX_INTERVALS = 200_000
PATTERN_NORM_TOL = 1e-6
JOINT_NORM_TOL = 1e-5
TABLE_SUM_TOL = 1e-12
TRACE_TOL = 1e-12

Value = Union[float, np.ndarray]


class QuadratureError(ArithmeticError):
    """Adaptive quadrature hit its depth or work cap before meeting its tolerance.

    ``partial`` holds the best estimate obtained; ``worst_interval`` is
    ``(a, b, error_estimate)`` for the subinterval that failed worst.
    """

    def __init__(self, message, partial, worst_interval):
        super().__init__(message)
        self.partial = partial
        self.worst_interval = worst_interval


@dataclass(frozen=True)
class QuadratureResult:
    value: Value
    error_estimate: float
    subdivisions: int


def _err_norm(diff) -> float:
    return float(np.max(np.abs(diff)))


def integrate(f: Callable[[float], Value], a: float, b: float,
              abs_tol: float = QUAD_ABS_TOL, max_depth: int = QUAD_MAX_DEPTH,
              initial_panels: int = QUAD_INITIAL_PANELS,
              max_intervals: int = QUAD_MAX_INTERVALS) -> QuadratureResult:
    """Adaptive Simpson quadrature of ``f`` over ``[a, b]``.

    ``f`` may return a scalar or a numpy array (all components are integrated
    together; the error is controlled in the max norm). The interval is first
    cut into ``initial_panels`` equal panels, and each panel is bisected until
    the Richardson error estimate ``|S2 - S1| / 15`` falls below its share of
    ``abs_tol``. Panels are processed in a fixed order, so the result is
    deterministic.

    Raises QuadratureError if any panel needs more than ``max_depth``
    bisections, or if more than ``max_intervals`` bisections are needed in total.
    """
    if not b > a:
        raise ValueError(f"integration bounds must satisfy a < b, got [{a}, {b}]")
    if not abs_tol > 0:
        raise ValueError("abs_tol must be positive")

    edges = np.linspace(a, b, initial_panels + 1)
    fvals = [f(float(x)) for x in edges]
    mids = [f(0.5 * (edges[i] + edges[i + 1])) for i in range(initial_panels)]

    total = 0.0
    err_total = 0.0
    subdivisions = 0
    failures = []
    panel_tol = abs_tol / initial_panels

    # (lo, hi, f_lo, f_mid, f_hi, whole, tol, depth); LIFO with right pushed first
    stack = []
    for i in reversed(range(initial_panels)):
        lo, hi = float(edges[i]), float(edges[i + 1])
        whole = (hi - lo) / 6.0 * (fvals[i] + 4.0 * mids[i] + fvals[i + 1])
        stack.append((lo, hi, fvals[i], mids[i], fvals[i + 1], whole, panel_tol, 0))

    while stack:
        lo, hi, flo, fmid, fhi, whole, tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        f_lm = f(0.5 * (lo + mid))
        f_rm = f(0.5 * (mid + hi))
        left = (mid - lo) / 6.0 * (flo + 4.0 * f_lm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * f_rm + fhi)
        diff = left + right - whole
        err = _err_norm(diff) / 15.0
        if err <= tol:
            total = total + left + right + diff / 15.0
            err_total += err
            continue
        if depth + 1 >= max_depth:
            failures.append((lo, hi, err))
            total = total + left + right + diff / 15.0
            err_total += err
            continue
        subdivisions += 1
        if subdivisions > max_intervals:
            raise QuadratureError(
                f"adaptive Simpson exceeded {max_intervals} subdivisions; "
                f"interval [{lo:.6g}, {hi:.6g}] still has error {err:.3g}",
                partial=total, worst_interval=(lo, hi, err))
        stack.append((mid, hi, fmid, f_rm, fhi, right, 0.5 * tol, depth + 1))
        stack.append((lo, mid, flo, f_lm, fmid, left, 0.5 * tol, depth + 1))

    if failures:
        worst = max(failures, key=lambda item: item[2])
        raise QuadratureError(
            f"adaptive Simpson did not converge within depth {max_depth}; "
            f"worst subinterval [{worst[0]:.6g}, {worst[1]:.6g}] has error {worst[2]:.3g}",
            partial=total, worst_interval=worst)
    return QuadratureResult(total, err_total, subdivisions)


def xlog2x(x):
    """x * log2(x) with 0 -> 0. Accepts scalars or arrays."""
    if isinstance(x, (float, int)):
        if x < 0:
            raise ValueError("xlog2x is defined for x >= 0 only")
        return x * math.log2(x) if x > 0 else 0.0
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("xlog2x is defined for x >= 0 only")
    safe = np.where(arr > 0, arr, 1.0)
    out = np.where(arr > 0, arr * np.log2(safe), 0.0)
    if out.ndim == 0:
        return float(out)
    return out
