"""Physical constants, experiment configuration and derived scalar parameters.

Everything is in SI units. The electron is scattered by a proton sitting
between the two slits; the net transverse momentum exchanged (the impulse
``P``) fixes the recoil velocity, the dimensionless coupling ``alpha = P d / hbar``
and the fringe visibility ``exp(-(P Delta / hbar)^2)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import NamedTuple


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values. Override only as a complete set."""

    elementary_charge: float = 1.602176634e-19
    vacuum_permittivity: float = 8.8541878128e-12
    reduced_planck: float = 1.054571817e-34
    electron_mass: float = 9.1093837015e-31
    proton_mass: float = 1.67262192369e-27

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{f.name} must be positive, got {value!r}")

    @property
    def coulomb_constant_e2(self) -> float:
        """e^2 / (4 pi eps0), in J m."""
        return self.elementary_charge ** 2 / (4.0 * math.pi * self.vacuum_permittivity)


CODATA_2018 = PhysicalConstants()

# Regime-of-validity thresholds for validate_regime().
SMALL_SCATTERING_RATIO = 0.1      # warn if P >= 0.1 m v
SHORT_INTERACTION_RATIO = 0.1     # warn if tau >= 0.1 m delta^2 / hbar
PATH_SEPARATION_RATIO = 0.5       # warn if sqrt(delta^2 + Delta^2) >= 0.5 d
NARROW_SLIT_RATIO = 0.5           # warn if delta >= 0.5 d

DEFAULT_TAU_TRANSITS = 10.0       # tau = 10 d / v when not given


def velocity_from_energy(energy_ev: float, constants: PhysicalConstants = CODATA_2018) -> float:
    """Nonrelativistic electron speed for a kinetic energy given in eV."""
    if not (math.isfinite(energy_ev) and energy_ev > 0):
        raise ValueError(f"kinetic energy must be positive, got {energy_ev!r}")
    joules = energy_ev * constants.elementary_charge
    return math.sqrt(2.0 * joules / constants.electron_mass)


def energy_from_velocity(velocity: float, constants: PhysicalConstants = CODATA_2018) -> float:
    if not (math.isfinite(velocity) and velocity > 0):
        raise ValueError(f"velocity must be positive, got {velocity!r}")
    return 0.5 * constants.electron_mass * velocity ** 2 / constants.elementary_charge


CONFIG_KEYS = (
    "slit_separation_d",
    "electron_width_delta",
    "proton_width_Delta",
    "electron_velocity_v",
    "kinetic_energy_ev",
    "screen_distance_D",
    "interaction_time_tau",
)
_REQUIRED_KEYS = ("slit_separation_d", "electron_width_delta", "proton_width_Delta",
                  "screen_distance_D")


class ConfigError(ValueError):
    """Invalid experiment configuration. ``key`` names the offending field."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


@dataclass(frozen=True)
class ExperimentConfig:
    """Geometry and beam parameters of one monitored double-slit setup.

    Give exactly one of ``electron_velocity_v`` (m/s) and ``kinetic_energy_ev``;
    the other is filled in using CODATA 2018 masses. ``interaction_time_tau``
    defaults to ``10 d / v``.
    """

    slit_separation_d: float
    electron_width_delta: float
    proton_width_Delta: float
    screen_distance_D: float
    electron_velocity_v: float | None = None
    kinetic_energy_ev: float | None = None
    interaction_time_tau: float | None = None

    def __post_init__(self):
        has_v = self.electron_velocity_v is not None
        has_e = self.kinetic_energy_ev is not None
        if has_v == has_e:
            raise ConfigError(
                "exactly one of electron_velocity_v and kinetic_energy_ev must be given",
                key="electron_velocity_v" if has_v else "kinetic_energy_ev")
        for name in _REQUIRED_KEYS + (("electron_velocity_v",) if has_v else ("kinetic_energy_ev",)):
            _check_positive(name, getattr(self, name))
        if has_v:
            object.__setattr__(self, "kinetic_energy_ev",
                               energy_from_velocity(self.electron_velocity_v))
        else:
            object.__setattr__(self, "electron_velocity_v",
                               velocity_from_energy(self.kinetic_energy_ev))
        if self.interaction_time_tau is None:
            tau = DEFAULT_TAU_TRANSITS * self.slit_separation_d / self.electron_velocity_v
            object.__setattr__(self, "interaction_time_tau", tau)
        else:
            _check_positive("interaction_time_tau", self.interaction_time_tau)

    @property
    def velocity(self) -> float:
        return self.electron_velocity_v

    @property
    def transit_ratio(self) -> float:
        """v tau / d."""
        return self.electron_velocity_v * self.interaction_time_tau / self.slit_separation_d

    def replace(self, **changes) -> "ExperimentConfig":
        """Copy with some inputs changed.

        Changing velocity or energy drops the other one, and tau is re-derived
        unless it was given explicitly in ``changes``.
        """
        base = {
            "slit_separation_d": self.slit_separation_d,
            "electron_width_delta": self.electron_width_delta,
            "proton_width_Delta": self.proton_width_Delta,
            "screen_distance_D": self.screen_distance_D,
            "electron_velocity_v": self.electron_velocity_v,
        }
        if "kinetic_energy_ev" in changes:
            base.pop("electron_velocity_v")
        base.update(changes)
        return ExperimentConfig(**base)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        unknown = sorted(set(data) - set(CONFIG_KEYS))
        if unknown:
            raise ConfigError(f"unknown config key {unknown[0]!r}", key=unknown[0])
        for key in _REQUIRED_KEYS:
            if key not in data:
                raise ConfigError(f"missing required config key {key!r}", key=key)
        for key, value in data.items():
            if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
                raise ConfigError(f"config key {key!r} must be a number", key=key)
        return cls(**{k: (float(v) if v is not None else None) for k, v in data.items()})

    def to_dict(self) -> dict:
        return asdict(self)


def _check_positive(name, value):
    if value is None or not (math.isfinite(value) and value > 0):
        raise ConfigError(f"{name} must be a positive finite number, got {value!r}", key=name)


def load_config(path: str | Path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config document must be a JSON object")
    return ExperimentConfig.from_dict(data)


def bach_config(proton_width: float = 210e-9) -> ExperimentConfig:
    """600 eV electrons, d = 272 nm, delta = 20 nm, screen at 240 mm."""
    return ExperimentConfig(
        slit_separation_d=272e-9,
        electron_width_delta=20e-9,
        proton_width_Delta=proton_width,
        screen_distance_D=0.240,
        kinetic_energy_ev=600.0,
    )


# --- scattering ---------------------------------------------------------

def _saturation(config: ExperimentConfig) -> float:
    r = config.transit_ratio
    return r / math.sqrt(1.0 + r * r)


def impulse(config: ExperimentConfig, constants: PhysicalConstants = CODATA_2018,
            asymptotic: bool = False) -> float:
    """Transverse momentum exchanged during the passage, in kg m/s.

    The finite-tau value carries the factor (v tau/d)/sqrt(1 + (v tau/d)^2);
    ``asymptotic=True`` returns the tau -> infinity limit.
    """
    p_inf = constants.coulomb_constant_e2 * 4.0 / (config.velocity * config.slit_separation_d)
    if asymptotic:
        return p_inf
    return p_inf * _saturation(config)


def interaction_alpha(config: ExperimentConfig, constants: PhysicalConstants = CODATA_2018,
                      asymptotic: bool = True) -> float:
    """alpha = P d / hbar = e^2 / (pi eps0 hbar v) in the long-interaction limit."""
    e2 = constants.elementary_charge ** 2
    alpha = e2 / (math.pi * constants.vacuum_permittivity * constants.reduced_planck * config.velocity)
    if asymptotic:
        return alpha
    return alpha * _saturation(config)


def velocity_for_alpha(alpha: float, constants: PhysicalConstants = CODATA_2018) -> float:
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    e2 = constants.elementary_charge ** 2
    return e2 / (math.pi * constants.vacuum_permittivity * constants.reduced_planck * alpha)


def with_alpha(config: ExperimentConfig, alpha: float,
               constants: PhysicalConstants = CODATA_2018) -> ExperimentConfig:
    """Same geometry, electron speed chosen so that interaction_alpha == alpha."""
    return config.replace(electron_velocity_v=velocity_for_alpha(alpha, constants))


# --- time-dependent packet quantities -------------------------------------

def spreading_factor(t: float, width: float, mass: float, hbar: float,
                     approximate: bool = False) -> float:
    """Envelope factor A(t) = delta^2 / (delta^4 + (hbar t / m)^2), in 1/m^2."""
    s = hbar * t / mass
    if approximate:
        return (width / s) ** 2
    return width ** 2 / (width ** 4 + s * s)


def fringe_spacing(t: float, slit_separation: float, width: float, impulse_p: float,
                   mass: float, hbar: float, approximate: bool = False) -> float:
    """Fringe period Lambda(t) in metres.

    Exact: Lambda / 2 pi = ((hbar t/m)^2 + delta^4) / (d hbar t/m + 2 P delta^4 / hbar).
    Approximate (t much longer than the spreading time): hbar t / (m d).
    """
    s = hbar * t / mass
    if approximate:
        return 2.0 * math.pi * s / slit_separation
    return 2.0 * math.pi * (s * s + width ** 4) / (slit_separation * s + 2.0 * impulse_p * width ** 4 / hbar)


def normalization(config: ExperimentConfig, impulse_p: float,
                  constants: PhysicalConstants = CODATA_2018) -> float:
    hbar = constants.reduced_planck
    d, delta, big_delta = config.slit_separation_d, config.electron_width_delta, config.proton_width_Delta
    overlap = (math.exp(-(d / 2.0) ** 2 / delta ** 2)
               * math.exp(-(impulse_p * delta / hbar) ** 2)
               * math.exp(-(impulse_p * big_delta / hbar) ** 2))
    return 1.0 / math.sqrt(1.0 + overlap)


@dataclass(frozen=True)
class DerivedParams:
    impulse_P: float
    alpha: float
    recoil_velocity_v0: float
    visibility_V: float
    normalization_N: float
    propagation_time_T: float
    spreading_time: float
    fringe_spacing_Lambda: float
    envelope_factor_A: float
    electron_velocity_v: float
    proton_velocity: float

    def to_dict(self) -> dict:
        return asdict(self)


def derive(config: ExperimentConfig, constants: PhysicalConstants = CODATA_2018,
           asymptotic: bool = True) -> DerivedParams:
    """All scalar parameters of the model, with A and Lambda taken at t = T = D / v.

    By default the impulse is the long-interaction limit, so that
    ``alpha == P d / hbar`` holds exactly; pass ``asymptotic=False`` to use the
    finite-tau impulse throughout.
    """
    hbar, m = constants.reduced_planck, constants.electron_mass
    p = impulse(config, constants, asymptotic=asymptotic)
    t_screen = config.screen_distance_D / config.velocity
    delta = config.electron_width_delta
    return DerivedParams(
        impulse_P=p,
        alpha=p * config.slit_separation_d / hbar,
        recoil_velocity_v0=p / m,
        visibility_V=visibility(config.proton_width_Delta, p, hbar),
        normalization_N=normalization(config, p, constants),
        propagation_time_T=t_screen,
        spreading_time=m * delta ** 2 / hbar,
        fringe_spacing_Lambda=fringe_spacing(t_screen, config.slit_separation_d, delta, p, m, hbar),
        envelope_factor_A=spreading_factor(t_screen, delta, m, hbar),
        electron_velocity_v=config.velocity,
        proton_velocity=p / constants.proton_mass,
    )


def visibility(proton_width: float, impulse_p: float, hbar: float = CODATA_2018.reduced_planck) -> float:
    return math.exp(-(impulse_p * proton_width / hbar) ** 2)


class RegimeWarning(NamedTuple):
    name: str
    message: str
    ratio: float
    threshold: float


def validate_regime(config: ExperimentConfig,
                    constants: PhysicalConstants = CODATA_2018) -> list[RegimeWarning]:
    """Check the assumptions behind the impulse model; never raises."""
    m, hbar = constants.electron_mass, constants.reduced_planck
    d, delta, big_delta = config.slit_separation_d, config.electron_width_delta, config.proton_width_Delta
    p = impulse(config, constants)
    checks = [
        ("small_scattering", p / (m * config.velocity), SMALL_SCATTERING_RATIO,
         "impulse is not small compared with the electron momentum m v"),
        ("short_interaction", config.interaction_time_tau / (m * delta ** 2 / hbar), SHORT_INTERACTION_RATIO,
         "interaction time is not short compared with the packet spreading time"),
        ("separated_paths", math.hypot(delta, big_delta) / d, PATH_SEPARATION_RATIO,
         "position uncertainty sqrt(delta^2 + Delta^2) is not small compared with d"),
        ("narrow_slits", delta / d, NARROW_SLIT_RATIO,
         "electron width delta is not small compared with d"),
    ]
    return [RegimeWarning(name, msg, ratio, threshold)
            for name, ratio, threshold, msg in checks if ratio >= threshold]
