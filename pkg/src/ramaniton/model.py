"""Model parameters, derived couplings and unit conversion.

Everything downstream is dimensionless: frequencies in units of the phonon
frequency Omega, time in units of 1/Omega and lengths in units of c'/Omega,
where c' = c/n0 is the speed of light in the material.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .errors import InvalidParameters

SPEED_OF_LIGHT = 299_792_458.0  # m/s

CONFIG_KEYS = ("omega_ratio", "eta", "q", "Omega_hz", "n0", "n2", "intensity")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless inputs of the rotating-frame Hamiltonian.

    Attributes
    ----------
    omega_ratio : float
        Pump laser frequency over phonon frequency.
    eta : float
        Photon-phonon coupling figure of merit.
    q : float
        Raman shift c'Q/Omega; q = 1 is the phonon resonance.
    """

    omega_ratio: float
    eta: float
    q: float

    def __post_init__(self):
        for name in ("omega_ratio", "eta", "q"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.eta < 0:
            raise InvalidParameters(f"eta must be >= 0, got {self.eta}")
        if not 0 <= self.q <= self.omega_ratio:
            raise InvalidParameters(
                f"q must lie in [0, omega_ratio={self.omega_ratio}], got {self.q}"
            )

    def with_q(self, q: float) -> "ModelParams":
        return replace(self, q=float(q))

    def with_eta(self, eta: float) -> "ModelParams":
        return replace(self, eta=float(eta))


@dataclass(frozen=True)
class PhysicalConstants:
    """Material and pump constants in SI units.

    ``Omega`` is the phonon angular frequency in rad/s, ``n2`` the nonlinear
    index in m^2/W and ``intensity`` the pump intensity in W/m^2. The last
    two are only needed for :func:`estimate_eta` and may be left unset when
    only lengths are converted.
    """

    Omega: float
    n0: float
    n2: Optional[float] = None
    intensity: Optional[float] = None

    def __post_init__(self):
        for name in ("Omega", "n0", "n2", "intensity"):
            value = getattr(self, name)
            if value is None and name in ("n2", "intensity"):
                continue
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameters(f"{name} must be positive and finite, got {value!r}")

    @property
    def light_speed(self) -> float:
        """Speed of light in the material, c/n0 (m/s)."""
        return SPEED_OF_LIGHT / self.n0

    @property
    def length_unit(self) -> float:
        """c'/Omega in metres: the physical length of one dimensionless unit."""
        return self.light_speed / self.Omega


# 1550 nm pump in silicon: omega_L/2pi = 193 THz, Omega/2pi = 15.6 THz.
SILICON = ModelParams(omega_ratio=12.4, eta=1e-3, q=1.0)
SILICON_CONSTANTS = PhysicalConstants(
    Omega=2 * math.pi * 15.6e12, n0=3.42, n2=4.5e-18, intensity=1e11
)
PRESETS = {"silicon": (SILICON, SILICON_CONSTANTS)}


def derive_couplings(params: ModelParams) -> tuple[float, float]:
    """Return ``(eta_minus, eta_plus) = eta/4 * sqrt(omega_ratio -/+ q)``."""
    quarter = params.eta / 4
    eta_minus = quarter * math.sqrt(params.omega_ratio - params.q)
    eta_plus = quarter * math.sqrt(params.omega_ratio + params.q)
    return eta_minus, eta_plus


def kerr_eta(n0: float, n2: float, intensity: float) -> float:
    """Coupling strength implied by the Kerr nonlinearity, sqrt(8 n2 I / n0)."""
    if n0 <= 0 or n2 < 0 or intensity < 0:
        raise InvalidParameters("need n0 > 0, n2 >= 0 and intensity >= 0")
    return math.sqrt(8 * n2 * intensity / n0)


def estimate_eta(constants: PhysicalConstants) -> float:
    if constants.n2 is None or constants.intensity is None:
        raise InvalidParameters("estimate_eta needs n2 and intensity")
    return kerr_eta(constants.n0, constants.n2, constants.intensity)


def dimensionless_length_to_physical(tau: float, constants: PhysicalConstants) -> float:
    """Convert a dimensionless propagation time Omega*t to a waveguide length in metres."""
    if tau < 0:
        raise InvalidParameters(f"tau must be >= 0, got {tau}")
    return tau * constants.length_unit


def parse_config(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines. Blank lines and ``#`` comments are skipped.

    Values are returned as strings because ``q`` may hold a grid
    specification; unknown keys raise :class:`InvalidParameters`.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameters(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise InvalidParameters(
                f"line {lineno}: unknown key {key!r} (allowed: {', '.join(CONFIG_KEYS)})"
            )
        values[key] = value
    return values


def load_config(path) -> dict[str, str]:
    return parse_config(Path(path).read_text())


def constants_from_config(values: dict) -> PhysicalConstants | None:
    """Build :class:`PhysicalConstants` when ``Omega_hz`` and ``n0`` are present.

    ``Omega_hz`` is the phonon frequency Omega/2pi in Hz.
    """
    if "Omega_hz" not in values or "n0" not in values:
        return None
    optional = {k: float(values[k]) for k in ("n2", "intensity") if k in values}
    return PhysicalConstants(
        Omega=2 * math.pi * float(values["Omega_hz"]), n0=float(values["n0"]), **optional
    )
