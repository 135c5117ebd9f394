"""Entanglement entropy and which-way information gain, in bits.

All quantities depend on the setup only through the visibility V, the overlap
of the two proton states left behind by an electron passing slit 1 or slit 2.
The closed forms (``info_M``, ``info_WZ``, ``info_Q``, ``holevo_bound``) each
have a table-based counterpart: ``mutual_information(joint_table(method, V))``
computes H(X) + H(Y) - H(X, Y) from the joint outcome probabilities and serves
as an independent check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import QUAD_ABS_TOL, TABLE_SUM_TOL, TRACE_TOL, integrate, xlog2x

METHODS = ("BE", "M", "WZ", "Q", "vN", "quantumMI")
TABLE_METHODS = ("M", "WZ", "Q")
BE_TAIL_WIDTH = 8.0


def erf(x: float) -> float:
    """Error function (C library implementation, ~1 ulp accuracy)."""
    return math.erf(x)


def _check_visibility(v):
    if not (0.0 <= v <= 1.0):
        raise ValueError(f"visibility must lie in [0, 1], got {v!r}")


def binary_entropy(p: float) -> float:
    """H2(p) = -p log2 p - (1 - p) log2 (1 - p), with 0 log 0 = 0."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"probability must lie in [0, 1], got {p!r}")
    return -(xlog2x(p) + xlog2x(1.0 - p))


def _shannon(probs) -> float:
    return -float(np.sum(xlog2x(np.asarray(probs, dtype=float))))


# --- density matrices -----------------------------------------------------

@dataclass(frozen=True)
class DensityMatrix2:
    """2x2 Hermitian, unit-trace, positive semidefinite matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=TRACE_TOL):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace must be 1, got {np.trace(m).real!r}")
        object.__setattr__(self, "entries", m)
        lo, hi = _eigenvalues_2x2(m)
        if lo < -TRACE_TOL or hi > 1.0 + TRACE_TOL:
            raise ValueError("density matrix eigenvalues must lie in [0, 1]")

    def eigenvalues(self) -> tuple[float, float]:
        return _eigenvalues_2x2(self.entries)


def _eigenvalues_2x2(m) -> tuple[float, float]:
    """Eigenvalues of a 2x2 Hermitian matrix, ascending."""
    a, d = m[0, 0].real, m[1, 1].real
    half_gap = math.hypot((a - d) / 2.0, abs(m[0, 1]))
    mean = (a + d) / 2.0
    return mean - half_gap, mean + half_gap


def electron_density_matrix(v: float) -> DensityMatrix2:
    """Reduced electron state (1/2) [[1, V], [V, 1]] in the slit basis."""
    _check_visibility(v)
    return DensityMatrix2(0.5 * np.array([[1.0, v], [v, 1.0]]))


def _entropy_of_spectrum(eigs) -> float:
    clipped = np.clip(np.asarray(eigs, dtype=float), 0.0, None)
    return _shannon(clipped)


def von_neumann_entropy(rho: DensityMatrix2) -> float:
    if not isinstance(rho, DensityMatrix2):
        rho = DensityMatrix2(rho)
    return _entropy_of_spectrum(rho.eigenvalues())


# --- information gain, closed forms ---------------------------------------

def _u0(v: float) -> float:
    """P Delta / hbar recovered from V = exp(-u0^2)."""
    return math.sqrt(-math.log(v))


def info_M(v: float) -> float:
    """Binary up/down momentum measurement: 1 - H2(1/2 + erf(u0)/2)."""
    _check_visibility(v)
    if v == 0.0:
        return 1.0
    return 1.0 - binary_entropy(0.5 + 0.5 * erf(_u0(v)))


def info_WZ(v: float) -> float:
    """Minimum-error (Helstrom) discrimination of the two proton states."""
    _check_visibility(v)
    return 1.0 - binary_entropy(0.5 + 0.5 * math.sqrt(1.0 - v * v))


def info_Q(v: float) -> float:
    """Unambiguous discrimination: succeeds with probability 1 - V."""
    _check_visibility(v)
    return 1.0 - v


def holevo_bound(v: float) -> float:
    _check_visibility(v)
    return binary_entropy(0.5 + 0.5 * v)


def _be_densities(u0: float):
    norm = 0.5 / math.sqrt(math.pi)

    def up(u):
        return norm * math.exp(-(u - u0) ** 2)

    def down(u):
        return norm * math.exp(-(u + u0) ** 2)

    return up, down


def info_BE(v: float, quad_tolerance: float = QUAD_ABS_TOL) -> float:
    """Average information from a full measurement of the proton momentum.

    1 - integral of P(u) H2(p(u)) du in the dimensionless variable u = k Delta,
    where P(u) is the outcome density and p(u) the posterior for slit 1.
    """
    _check_visibility(v)
    if v == 0.0:
        return 1.0
    if v == 1.0:
        return 0.0
    u0 = _u0(v)
    up, down = _be_densities(u0)

    def integrand(u):
        total = up(u) + down(u)
        # posterior 1 / (1 + e^{-4 u u0}) written to stay finite for large |u|
        z = 4.0 * u * u0
        p1 = 1.0 / (1.0 + math.exp(-z)) if z >= 0 else math.exp(z) / (1.0 + math.exp(z))
        return total * binary_entropy(p1)

    span = u0 + BE_TAIL_WIDTH
    conditional = integrate(integrand, -span, span, abs_tol=quad_tolerance).value
    return 1.0 - conditional


def info_BE_joint_entropy(v: float, quad_tolerance: float = QUAD_ABS_TOL) -> float:
    """I_BE through H(X) + H(Y) - H(X, Y) with continuous outcome Y = u."""
    _check_visibility(v)
    if v == 0.0:
        return 1.0
    if v == 1.0:
        return 0.0
    u0 = _u0(v)
    up, down = _be_densities(u0)
    return mutual_information_continuous(up, down, -(u0 + BE_TAIL_WIDTH), u0 + BE_TAIL_WIDTH,
                                         quad_tolerance)


# --- joint tables ---------------------------------------------------------

@dataclass(frozen=True)
class JointTable:
    """p[x, y] for path x in {1, 2} (rows) and measurement outcome y (columns)."""

    probabilities: np.ndarray
    outcomes: tuple[str, ...]

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if p.ndim != 2 or p.shape[0] != 2 or p.shape[1] != len(self.outcomes):
            raise ValueError("table must have two rows and one column per outcome")
        if np.any(p < 0):
            raise ValueError("joint probabilities must be non-negative")
        if abs(p.sum() - 1.0) > TABLE_SUM_TOL:
            raise ValueError(f"joint probabilities must sum to 1, got {p.sum()!r}")
        if np.any(np.abs(p.sum(axis=1) - 0.5) > TABLE_SUM_TOL):
            raise ValueError("each path must have prior probability 1/2")
        object.__setattr__(self, "probabilities", p)


def joint_table(method: str, v: float) -> JointTable:
    """Joint path/outcome probabilities for the M, WZ or Q measurement at 0 < V < 1."""
    if method not in TABLE_METHODS:
        raise ValueError(f"unknown table method {method!r}; expected one of {TABLE_METHODS}")
    if not (0.0 < v < 1.0):
        raise ValueError(f"joint tables are defined for 0 < V < 1, got {v!r}")
    if method == "M":
        e = erf(_u0(v))
        table = [[(1 + e) / 4, (1 - e) / 4],
                 [(1 - e) / 4, (1 + e) / 4]]
        return JointTable(np.array(table), ("up", "down"))
    if method == "WZ":
        cos_theta = math.sqrt(1.0 - v * v)
        table = [[(1 + cos_theta) / 4, (1 - cos_theta) / 4],
                 [(1 - cos_theta) / 4, (1 + cos_theta) / 4]]
        return JointTable(np.array(table), ("e1", "e2"))
    table = [[(1 - v) / 2, 0.0, v / 2],
             [0.0, (1 - v) / 2, v / 2]]
    return JointTable(np.array(table), ("1", "2", "fail"))


def mutual_information(table: JointTable) -> float:
    """I(X:Y) = H(X) + H(Y) - H(X, Y) in bits."""
    if not isinstance(table, JointTable):
        raise TypeError("mutual_information expects a JointTable")
    p = table.probabilities
    return _shannon(p.sum(axis=1)) + _shannon(p.sum(axis=0)) - _shannon(p.ravel())


def conditional_entropy(table: JointTable) -> float:
    """H(X|Y) = sum_y p_y H(X | Y = y)."""
    p = table.probabilities
    total = 0.0
    for column in p.T:
        py = column.sum()
        if py > 0:
            total += py * _shannon(column / py)
    return total


def mutual_information_continuous(density_1: Callable[[float], float],
                                  density_2: Callable[[float], float],
                                  lo: float, hi: float,
                                  quad_tolerance: float = QUAD_ABS_TOL) -> float:
    """H(X) + H(Y) - H(X, Y) for a continuous outcome with joint densities p_x(y).

    Each density must integrate to the prior of its path over [lo, hi].
    """
    prior_1 = integrate(density_1, lo, hi, abs_tol=quad_tolerance).value
    prior_2 = integrate(density_2, lo, hi, abs_tol=quad_tolerance).value
    h_x = _shannon([prior_1, prior_2])
    h_y = -integrate(lambda y: xlog2x(density_1(y) + density_2(y)), lo, hi,
                     abs_tol=quad_tolerance).value
    h_xy = -integrate(lambda y: xlog2x(density_1(y)) + xlog2x(density_2(y)), lo, hi,
                      abs_tol=quad_tolerance).value
    return h_x + h_y - h_xy


# --- quantum mutual information -------------------------------------------

def proton_state_matrices(v: float) -> tuple[np.ndarray, np.ndarray]:
    """rho_1, rho_2 for the two proton states in the Helstrom basis, sin(theta) = V."""
    _check_visibility(v)
    c = math.sqrt(1.0 - v * v)
    rho1 = 0.5 * np.array([[1 + c, v], [v, 1 - c]])
    rho2 = 0.5 * np.array([[1 - c, v], [v, 1 + c]])
    return rho1, rho2


def quantum_mutual_information(v: float) -> float:
    """S(rho_electron) + S(rho_proton) - S(rho_electron_proton).

    The electron is also recorded by a perfect detector, so its reduced state
    is diagonal, and the joint electron-proton state is block diagonal with
    blocks rho_1 / 2 and rho_2 / 2.
    """
    rho1, rho2 = proton_state_matrices(v)
    s_electron = von_neumann_entropy(DensityMatrix2(np.diag([0.5, 0.5])))
    s_proton = von_neumann_entropy(DensityMatrix2(0.5 * (rho1 + rho2)))
    block_eigs = [0.5 * e for block in (rho1, rho2) for e in _eigenvalues_2x2(block)]
    s_joint = _entropy_of_spectrum(block_eigs)
    return s_electron + s_proton - s_joint


INFO_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "BE": info_BE,
    "M": info_M,
    "WZ": info_WZ,
    "Q": info_Q,
    "vN": holevo_bound,
    "quantumMI": quantum_mutual_information,
}


def visibility_grid(points: int) -> np.ndarray:
    """Uniform interior grid V_i = i / (points + 1), i = 1..points."""
    if points < 1:
        raise ValueError("points must be positive")
    return np.arange(1, points + 1) / (points + 1)


@dataclass(frozen=True)
class InfoCurve:
    visibility_samples: np.ndarray
    values: dict[str, np.ndarray]


def info_curve(methods=METHODS, points: int = 99) -> InfoCurve:
    unknown = [m for m in methods if m not in INFO_FUNCTIONS]
    if unknown:
        raise ValueError(f"unknown method {unknown[0]!r}; valid methods: {', '.join(METHODS)}")
    grid = visibility_grid(points)
    values = {m: np.array([INFO_FUNCTIONS[m](float(v)) for v in grid]) for m in methods}
    return InfoCurve(grid, values)
