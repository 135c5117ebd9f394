"""One-dimensional Gaussian wave packets under free evolution.

``evolve_at`` is the closed-form free propagation of a Gaussian with width
``delta``, centre ``x0`` and mean momentum ``p0``::

    psi(x, t) = pi^(-1/4) sqrt(delta / s) exp[-(x - x0 - p0 t/m)^2 / (2 s)
                + i p0 x / hbar - i p0^2 t / (2 m hbar)],   s = delta^2 + i hbar t / m

The global phase ``exp(-i p0^2 t / 2 m hbar)`` is kept so that superpositions of
packets with different momenta interfere with the right relative phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import CODATA_2018

HBAR = CODATA_2018.reduced_planck


@dataclass(frozen=True)
class GaussianPacket:
    width: float
    center_x0: float = 0.0
    mean_momentum_p0: float = 0.0
    mass: float = CODATA_2018.electron_mass
    hbar: float = HBAR

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError(f"packet width must be positive, got {self.width!r}")
        if not self.mass > 0:
            raise ValueError(f"packet mass must be positive, got {self.mass!r}")

    def spread(self, t: float) -> float:
        """Width parameter of |psi|^2 at time t: sqrt(delta^2 + (hbar t / m delta)^2)."""
        return math.sqrt(self.width ** 2 + (self.hbar * t / (self.mass * self.width)) ** 2)

    def center(self, t: float) -> float:
        return self.center_x0 + self.mean_momentum_p0 * t / self.mass

    def evolve_at(self, x, t: float):
        return evolve_at(self, x, t)


def evolve_at(packet: GaussianPacket, x, t: float):
    """Complex amplitude psi(x, t) in m^(-1/2). ``x`` may be a scalar or an array."""
    if t < 0:
        raise ValueError("evolution time must be non-negative")
    delta, m, hbar = packet.width, packet.mass, packet.hbar
    p0 = packet.mean_momentum_p0
    s = complex(delta * delta, hbar * t / m)
    # delta/s lies in the closed fourth quadrant, away from the principal-branch cut
    prefactor = math.pi ** -0.25 * np.sqrt(delta / s)
    xs = np.asarray(x, dtype=float)
    shift = xs - packet.center_x0 - p0 * t / m
    phase = p0 * xs / hbar - p0 * p0 * t / (2.0 * m * hbar)
    out = prefactor * np.exp(-0.5 * shift * shift / s + 1j * phase)
    if out.ndim == 0:
        return complex(out)
    return out


def momentum_state(width: float, mean_momentum: float, k, hbar: float = HBAR):
    """Real momentum-space amplitude of a Gaussian of width ``width`` kicked by ``mean_momentum``.

    pi^(-1/4) Delta^(1/2) exp[-Delta^2 (k - p/hbar)^2 / 2]; ``mean_momentum=+P``
    gives the "up" state and ``-P`` the "down" state.
    """
    if not width > 0:
        raise ValueError("width must be positive")
    ks = np.asarray(k, dtype=float)
    out = math.pi ** -0.25 * math.sqrt(width) * np.exp(-0.5 * (width * (ks - mean_momentum / hbar)) ** 2)
    if out.ndim == 0:
        return float(out)
    return out


def overlap_visibility(width: float, impulse_p: float, hbar: float = HBAR) -> float:
    """<Phi_up|Phi_down> = exp(-(P Delta / hbar)^2).

    The same number is the average of exp(-2 i P X / hbar) over the proton's
    position distribution, i.e. the fringe visibility.
    """
    if width < 0:
        raise ValueError("width must be non-negative")
    return math.exp(-(impulse_p * width / hbar) ** 2)
