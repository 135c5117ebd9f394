"""Screen distribution of the electron after it has been scattered by the proton.

Two independent routes to the same density are provided:

* ``pattern_analytic`` evaluates the closed form
  N^2/2 sqrt(A/pi) [e^{-A(x+v0 t-d/2)^2} + e^{-A(x-v0 t+d/2)^2}
  + 2 V e^{-A(x^2+(d/2-v0 t)^2)} cos(2 pi x / Lambda)];
* ``pattern_numeric_oracle`` builds the entangled electron-proton wave function
  from four propagated Gaussians and integrates |Psi(x, X, t)|^2 over the proton
  coordinate X by adaptive quadrature.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import params as _params
from .numerics import QUAD_ABS_TOL, integrate
from .params import CODATA_2018, DerivedParams, ExperimentConfig, PhysicalConstants
from .wavepacket import GaussianPacket, evolve_at, momentum_state

DEFAULT_HALF_WIDTH = 120e-6
DEFAULT_POINTS = 2001
ORACLE_SPAN_WIDTHS = 8.0


@dataclass(frozen=True)
class PatternGrid:
    x_samples: np.ndarray
    density: np.ndarray
    time_t: float
    meta: DerivedParams

    def integral(self) -> float:
        return float(np.trapezoid(self.density, self.x_samples))


@dataclass(frozen=True)
class JointGrid:
    x_samples: np.ndarray
    k_samples: np.ndarray
    density: np.ndarray  # shape (len(x), len(k))
    time_t: float

    def x_marginal(self) -> np.ndarray:
        return np.trapezoid(self.density, self.k_samples, axis=1)

    def k_marginal(self) -> np.ndarray:
        return np.trapezoid(self.density, self.x_samples, axis=0)

    def integral(self) -> float:
        return float(np.trapezoid(self.x_marginal(), self.x_samples))


def _grid(values, name) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if arr.size > 1 and not np.all(np.diff(arr) > 0):
        raise ValueError(f"{name} must be strictly increasing")
    return arr


def _check_time(t):
    if not (math.isfinite(t) and t > 0):
        raise ValueError(f"time must be positive, got {t!r}")


class _PatternTerms(NamedTuple):
    prefactor: float       # N^2/2 sqrt(A/pi)
    direct: np.ndarray     # sum of the two single-slit envelopes
    cross: np.ndarray      # 2 e^{-A(x^2 + c^2)} cos(2 pi x / Lambda), without V


def _pattern_terms(config, t, x, constants, approximate, asymptotic) -> tuple[_PatternTerms, DerivedParams]:
    hbar, m = constants.reduced_planck, constants.electron_mass
    derived = _params.derive(config, constants, asymptotic=asymptotic)
    p = derived.impulse_P
    d, delta = config.slit_separation_d, config.electron_width_delta
    a = _params.spreading_factor(t, delta, m, hbar, approximate=approximate)
    lam = _params.fringe_spacing(t, d, delta, p, m, hbar, approximate=approximate)
    shift = derived.recoil_velocity_v0 * t
    c = d / 2.0 - shift
    direct = np.exp(-a * (x + shift - d / 2.0) ** 2) + np.exp(-a * (x - shift + d / 2.0) ** 2)
    cross = 2.0 * np.exp(-a * (x * x + c * c)) * np.cos(2.0 * math.pi * x / lam)
    prefactor = derived.normalization_N ** 2 / 2.0 * math.sqrt(a / math.pi)
    return _PatternTerms(prefactor, direct, cross), derived


def pattern_analytic(config: ExperimentConfig, t: float, x_grid,
                     constants: PhysicalConstants = CODATA_2018, approximate: bool = False,
                     asymptotic: bool = True) -> PatternGrid:
    """Closed-form electron density on the screen at time ``t`` (1/m).

    ``approximate=True`` swaps in the long-time forms of A and Lambda.
    """
    _check_time(t)
    x = _grid(x_grid, "x_grid")
    terms, derived = _pattern_terms(config, t, x, constants, approximate, asymptotic)
    density = terms.prefactor * (terms.direct + derived.visibility_V * terms.cross)
    return PatternGrid(x, density, t, derived)


def cross_term(config: ExperimentConfig, t: float, x_grid,
               constants: PhysicalConstants = CODATA_2018, asymptotic: bool = True) -> np.ndarray:
    """Interference part of the density, N^2/2 sqrt(A/pi) 2 V e^{...} cos(...)."""
    _check_time(t)
    x = _grid(x_grid, "x_grid")
    terms, derived = _pattern_terms(config, t, x, constants, False, asymptotic)
    return terms.prefactor * derived.visibility_V * terms.cross


def _packets(config, constants, p):
    m, big_m = constants.electron_mass, constants.proton_mass
    hbar = constants.reduced_planck
    d = config.slit_separation_d
    slit1 = GaussianPacket(config.electron_width_delta, +d / 2.0, -p, m, hbar)
    slit2 = GaussianPacket(config.electron_width_delta, -d / 2.0, +p, m, hbar)
    up = GaussianPacket(config.proton_width_Delta, 0.0, +p, big_m, hbar)
    down = GaussianPacket(config.proton_width_Delta, 0.0, -p, big_m, hbar)
    return slit1, slit2, up, down


def pattern_numeric_oracle(config: ExperimentConfig, t: float, x_grid,
                           quad_tolerance: float = QUAD_ABS_TOL,
                           constants: PhysicalConstants = CODATA_2018,
                           asymptotic: bool = True) -> PatternGrid:
    """Electron density from direct quadrature over the proton coordinate.

    The integral runs over X in +-(P t / M + 8 Delta(t)), with Delta(t) the
    proton packet spread at time t. It is carried out in the dimensionless
    variable s = X / Delta(t) on the rescaled integrand
    L Delta(t) |Psi(x, X, t)|^2, where L is the electron packet spread, so
    ``quad_tolerance`` is an absolute tolerance on an O(1) quantity.
    All grid points are integrated together and share one adaptive mesh.
    """
    _check_time(t)
    if not quad_tolerance > 0:
        raise ValueError("quad_tolerance must be positive")
    x = _grid(x_grid, "x_grid")
    derived = _params.derive(config, constants, asymptotic=asymptotic)
    p = derived.impulse_P
    slit1, slit2, up, down = _packets(config, constants, p)
    norm = derived.normalization_N / math.sqrt(2.0)
    psi1 = norm * evolve_at(slit1, x, t)
    psi2 = norm * evolve_at(slit2, x, t)

    electron_scale = slit1.spread(t)
    proton_scale = up.spread(t)
    half_span = abs(p) * t / constants.proton_mass / proton_scale + ORACLE_SPAN_WIDTHS
    weight = electron_scale * proton_scale

    def integrand(s):
        big_x = s * proton_scale
        amp = psi1 * evolve_at(up, big_x, t) + psi2 * evolve_at(down, big_x, t)
        return weight * (amp.real ** 2 + amp.imag ** 2)

    result = integrate(integrand, -half_span, half_span, abs_tol=quad_tolerance)
    return PatternGrid(x, np.asarray(result.value) / electron_scale, t, derived)


def joint_xk_distribution(config: ExperimentConfig, t: float, x_grid, k_grid,
                          constants: PhysicalConstants = CODATA_2018,
                          asymptotic: bool = True) -> JointGrid:
    """|Psi(x, k, t)|^2 over electron position x (m) and proton wavenumber k (1/m).

    The proton's free-evolution phase is common to both branches at fixed k
    and drops out of the modulus.
    """
    _check_time(t)
    x = _grid(x_grid, "x_grid")
    k = _grid(k_grid, "k_grid")
    derived = _params.derive(config, constants, asymptotic=asymptotic)
    p, hbar = derived.impulse_P, constants.reduced_planck
    slit1, slit2, _, _ = _packets(config, constants, p)
    psi1 = evolve_at(slit1, x, t)[:, None]
    psi2 = evolve_at(slit2, x, t)[:, None]
    phi_up = momentum_state(config.proton_width_Delta, +p, k, hbar)[None, :]
    phi_down = momentum_state(config.proton_width_Delta, -p, k, hbar)[None, :]
    amp = psi1 * phi_up + psi2 * phi_down
    density = derived.normalization_N ** 2 / 2.0 * (amp.real ** 2 + amp.imag ** 2)
    return JointGrid(x, k, density, t)


class ImpulsiveVisibility(NamedTuple):
    visibility: float
    quadratic_phase_a: float  # 1/m^2


def impulsive_visibility(config: ExperimentConfig, constants: PhysicalConstants = CODATA_2018,
                         asymptotic: bool = True) -> ImpulsiveVisibility:
    """Visibility when the Coulomb kick is kept as a quadratic phase e^{-i a (x - X)^2}.

    V = exp(-alpha^2 Delta^2 / (d^2 + 4 alpha^2 delta^2 Delta^2 / d^2)) with
    alpha = a d^2. With ``asymptotic=False`` the coefficient a carries the
    finite-tau factor (v tau/d)/sqrt(1 + (v tau/d)^2).
    """
    d = config.slit_separation_d
    alpha = _params.interaction_alpha(config, constants, asymptotic=asymptotic)
    a = alpha / d ** 2
    delta, big_delta = config.electron_width_delta, config.proton_width_Delta
    exponent = alpha ** 2 * big_delta ** 2 / (d ** 2 + 4.0 * alpha ** 2 * delta ** 2 * big_delta ** 2 / d ** 2)
    return ImpulsiveVisibility(math.exp(-exponent), a)


def default_x_grid(points: int = DEFAULT_POINTS, half_width: float = DEFAULT_HALF_WIDTH) -> np.ndarray:
    return np.linspace(-half_width, half_width, points)


def covering_x_grid(config: ExperimentConfig, t: float, points: int,
                    constants: PhysicalConstants = CODATA_2018, widths: float = 8.0) -> np.ndarray:
    """Grid spanning +-(d/2 + v0 t + widths / sqrt(A(t)))."""
    derived = _params.derive(config, constants)
    a = _params.spreading_factor(t, config.electron_width_delta, constants.electron_mass,
                                 constants.reduced_planck)
    half = config.slit_separation_d / 2.0 + derived.recoil_velocity_v0 * t + widths / math.sqrt(a)
    return np.linspace(-half, half, points)


def default_k_grid(config: ExperimentConfig, points: int,
                   constants: PhysicalConstants = CODATA_2018, widths: float = 8.0) -> np.ndarray:
    """Proton wavenumber grid spanning +-(P/hbar + widths / Delta)."""
    p = _params.impulse(config, constants, asymptotic=True)
    half = p / constants.reduced_planck + widths / config.proton_width_Delta
    return np.linspace(-half, half, points)
