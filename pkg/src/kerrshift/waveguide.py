"""Mapping between physical waveguide/beam parameters and the dimensionless model.

Conventions: SI units throughout (m, W, Hz). The photon number per mode is set
by the power within one coherence time, |a|^2 = P tau_coh / (hbar omega), and
the per-meter Kerr coupling is K = n2 hbar omega^2 / (2 c tau_coh sigma). The
two are tied to the fiber-optics nonlinear parameter gamma = 2 pi n2 / (lambda
sigma_eff) through the exact identity 2 |a|^2 K = gamma P.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .approx import KZ_APP_COEFF, f_min_approx
from .errors import NoRealRoot, TargetBelowFloor

SPEED_OF_LIGHT = 299_792_458.0          # m/s
HBAR = 1.054_571_817e-34                # J s

# regime rule: targets shallower than this are inverted through F1, deeper through F2
CROSSOVER_DB = -12.1


@dataclass(frozen=True)
class WaveguideSpec:
    """Material and geometry: Kerr index n2 (m^2/W), refractive index n0,
    effective mode area sigma_eff (m^2), vacuum wavelength (m).

    n0 is carried for completeness; it cancels out of every quantity
    computed here.
    """

    n2: float
    n0: float
    sigma_eff: float
    wavelength: float

    def __post_init__(self):
        for name in ("n2", "n0", "sigma_eff", "wavelength"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not (0.1e-6 <= self.wavelength <= 10e-6):
            raise ValueError(f"wavelength {self.wavelength} m outside the "
                             "sanity window [0.1e-6, 10e-6]")

    @property
    def omega(self) -> float:
        return 2.0 * np.pi * SPEED_OF_LIGHT / self.wavelength


@dataclass(frozen=True)
class BeamSpec:
    """Beam power (W) and spectral width (Hz); coherence time is 1/spectral_width."""

    power: float
    spectral_width: float

    def __post_init__(self):
        if self.power <= 0:
            raise ValueError("power must be positive")
        if self.spectral_width <= 0:
            raise ValueError("spectral_width must be positive")

    @property
    def coherence_time(self) -> float:
        return 1.0 / self.spectral_width


def kerr_coupling(wg: WaveguideSpec, beam: BeamSpec) -> float:
    """Kerr coupling K in 1/m: n2 hbar omega^2 / (2 c tau_coh sigma_eff)."""
    return (wg.n2 * HBAR * wg.omega ** 2
            / (2.0 * SPEED_OF_LIGHT * beam.coherence_time * wg.sigma_eff))


def alpha_from_power(beam: BeamSpec, wg: WaveguideSpec) -> float:
    """Dimensionless amplitude |a| = sqrt(P tau_coh / hbar omega)."""
    return float(np.sqrt(beam.power * beam.coherence_time / (HBAR * wg.omega)))


def gamma(wg: WaveguideSpec) -> float:
    """Fiber-optics nonlinear parameter 2 pi n2 / (lambda sigma_eff), in 1/(W m)."""
    return 2.0 * np.pi * wg.n2 / (wg.wavelength * wg.sigma_eff)


def z_opt_physical(wg: WaveguideSpec, beam: BeamSpec) -> float:
    """Optimal medium length in meters.

    z_opt = lambda * (sqrt(3)/2)^(1/3) / (2 pi n2 I) * (P tau_coh / hbar omega)^(1/3)
    with intensity I = P / sigma_eff.
    """
    intensity = beam.power / wg.sigma_eff
    photon_number = beam.power * beam.coherence_time / (HBAR * wg.omega)
    return (wg.wavelength * KZ_APP_COEFF / (2.0 * np.pi)
            / (wg.n2 * intensity) * photon_number ** (1.0 / 3.0))


def fano_floor_physical(wg: WaveguideSpec, beam: BeamSpec) -> float:
    """Minimal reachable Fano factor in dB at these physical parameters."""
    return float(10.0 * np.log10(f_min_approx(alpha_from_power(beam, wg))))


class LengthSolution(NamedTuple):
    z: float    # medium length, m
    x: float    # nonlinear coordinate |a|^2 Kz


def length_for_suppression(target_db: float, power: float, wg: WaveguideSpec,
                           spectral_width: float | None = None) -> LengthSolution:
    """Medium length that reaches a suppression target, via the regime rule.

    Shallow targets (>= -12.1 dB) invert the short-length law
    exp(-4x + x^2) = F (smaller quadratic root); deeper targets invert the
    dominant near-optimum term 1/(16 x^2) = F. The length z = 2x / (gamma P)
    does not depend on the spectral width; when one is supplied it is used
    only to guard against targets below the physical floor.
    """
    if target_db >= 0:
        raise ValueError("target_db must be negative (suppression)")
    if power <= 0:
        raise ValueError("power must be positive")
    if spectral_width is not None:
        floor = fano_floor_physical(wg, BeamSpec(power, spectral_width))
        if target_db <= floor:
            raise TargetBelowFloor(
                f"target {target_db} dB is below the physical floor {floor:.1f} dB")
    fano = 10.0 ** (target_db / 10.0)
    if target_db >= CROSSOVER_DB:
        # x^2 - 4x - ln(F) = 0, smaller root
        discriminant = 16.0 + 4.0 * np.log(fano)
        if discriminant < 0:
            raise NoRealRoot(f"no real short-length solution for {target_db} dB")
        x = (4.0 - np.sqrt(discriminant)) / 2.0
    else:
        x = 1.0 / (4.0 * np.sqrt(fano))
    z = 2.0 * x / (gamma(wg) * power)
    return LengthSolution(float(z), float(x))


_PRESET_KEYS = {
    "n2_m2_per_W": "n2",
    "n0": "n0",
    "sigma_eff_m2": "sigma_eff",
    "lambda_m": "wavelength",
}


def parse_preset(text: str) -> WaveguideSpec:
    """Parse the key-value preset format (keys n2_m2_per_W, n0, sigma_eff_m2, lambda_m)."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"preset line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        if key not in _PRESET_KEYS:
            raise ValueError(f"preset line {lineno}: unknown key {key!r}")
        values[_PRESET_KEYS[key]] = float(val.strip())
    missing = {"n2", "n0", "sigma_eff", "wavelength"} - set(values)
    if missing:
        raise ValueError(f"preset missing keys for: {sorted(missing)}")
    return WaveguideSpec(**values)


def load_preset(name_or_path: str) -> WaveguideSpec:
    """Load a bundled preset by name (e.g. 'si3n4') or any preset file by path."""
    bundled = resources.files("kerrshift").joinpath("presets", f"{name_or_path}.txt")
    if bundled.is_file():
        return parse_preset(bundled.read_text())
    path = Path(name_or_path)
    if path.is_file():
        return parse_preset(path.read_text())
    raise FileNotFoundError(f"no bundled preset or file named {name_or_path!r}")
