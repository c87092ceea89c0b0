"""Closed-form photon statistics of the displaced Kerr state.

The Kerr-evolved coherent state has field moments
    <a>       = alpha e^{i kz} e^{2i|a|^2 kz} g1
    <a^2>     = alpha^2 e^{4i kz} e^{4i|a|^2 kz} g2
    <a^dag a^2> = alpha |a|^2 e^{3i kz} e^{2i|a|^2 kz} g1
with the dephasing factors
    g1 = e^{-2i|a|^2 kz} e^{|a|^2 (e^{2i kz} - 1)}
    g2 = e^{-4i|a|^2 kz} e^{|a|^2 (e^{4i kz} - 1)}.
Mixing with a weak coherent beam (amplitude transmission tau, shift alpha_S)
and writing beta = alpha_S e^{-2i|a|^2 kz} / (tau alpha e^{i kz}) gives an
exact rational expression for the Fano factor, quadratic over quadratic in
beta. These closed forms hold at any amplitude, far beyond Fock-engine reach.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDenominator
from .fock import KerrScenario


def _sin_minus_arg(t: float) -> float:
    """sin(t) - t without cancellation for small |t|."""
    if abs(t) < 1e-3:
        t2 = t * t
        return -t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0))
    return np.sin(t) - t


def _cexpm1_imag(y: float) -> complex:
    """e^{iy} - 1 evaluated stably: -2 sin^2(y/2) + i sin(y)."""
    return complex(-2.0 * np.sin(y / 2.0) ** 2, np.sin(y))


class GFactors(NamedTuple):
    g1: complex
    g2: complex


def g_factors(scenario: KerrScenario) -> GFactors:
    """Dephasing factors of the Kerr-evolved field moments.

    The exponents |a|^2 (e^{2ikz} - 1 - 2ikz) and |a|^2 (e^{4ikz} - 1 - 4ikz)
    are assembled from expm1-style pieces so g - 1 stays accurate near kz = 0.
    """
    a2 = scenario.abs_alpha_sq
    kz = scenario.kz
    e1 = a2 * complex(-2.0 * np.sin(kz) ** 2, _sin_minus_arg(2.0 * kz))
    e2 = a2 * complex(-2.0 * np.sin(2.0 * kz) ** 2, _sin_minus_arg(4.0 * kz))
    return GFactors(np.exp(e1), np.exp(e2))


@dataclass(frozen=True)
class DisplacementSetting:
    """Beam-splitter transmission and normalized shift coordinate.

    beta is the canonical coordinate; raw reflected-beam parameters
    (rho, alpha0), when given, are converted at construction and kept only
    for provenance.
    """

    tau: float = 1.0
    beta: complex = 0j
    rho: complex | None = None
    alpha0: complex | None = None

    def __post_init__(self):
        if not (0.0 < self.tau <= 1.0):
            raise ValueError(f"tau must be in (0, 1], got {self.tau}")
        if (self.rho is None) != (self.alpha0 is None):
            raise ValueError("rho and alpha0 must be given together")
        if self.rho is not None and self.tau ** 2 + abs(self.rho) ** 2 > 1.0 + 1e-12:
            raise ValueError("beam splitter requires |tau|^2 + |rho|^2 <= 1")

    @classmethod
    def from_reflected_beam(cls, scenario: KerrScenario, tau: float,
                            rho: complex, alpha0: complex) -> "DisplacementSetting":
        """Build the normalized beta from raw (rho, alpha0) for a given scenario."""
        alpha_s = rho * alpha0
        beta = alpha_s * np.exp(-2j * scenario.abs_alpha_sq * scenario.kz) \
            / (tau * scenario.alpha * np.exp(1j * scenario.kz))
        return cls(tau=tau, beta=complex(beta), rho=rho, alpha0=alpha0)


def shift_amplitude(scenario: KerrScenario, setting: DisplacementSetting) -> complex:
    """Physical shift alpha_S = beta tau alpha e^{i kz} e^{2i|a|^2 kz}.

    At tau = 1 this is exactly the displacement D(alpha_S) applied to the
    Kerr-evolved state, which is how the Fock engine realizes the mixing.
    """
    return complex(setting.beta * setting.tau * scenario.alpha
                   * np.exp(1j * scenario.kz)
                   * np.exp(2j * scenario.abs_alpha_sq * scenario.kz))


@dataclass(frozen=True)
class FanoReport:
    mean_photon: float
    variance: float
    fano: float
    mandel_q: float
    suppression_db: float

    @classmethod
    def from_fano_mean(cls, fano: float, mean_photon: float) -> "FanoReport":
        return cls(mean_photon=mean_photon, variance=fano * mean_photon,
                   fano=fano, mandel_q=fano - 1.0,
                   suppression_db=10.0 * np.log10(fano))


def _fano_core(a2: float, kz: float, beta, tau: float):
    """Fano factor and denominator form over (broadcastable) beta values.

    Returns (F, denom) with mean photon number tau^2 |a|^2 denom. The bracket
    of the variance expression is assembled from cancellation-free pieces:
        u = e^{-2ikz} - 1 = -2i sin(kz) e^{-ikz}
        w = e^{-2ikz} g2* - g1*^2 = g1*^2 (e^{|a|^2 u^2 - 2ikz} - 1)
        s = 1 - |g1|^2 = -expm1(-4 |a|^2 sin^2 kz)
    """
    beta = np.asarray(beta, dtype=complex)
    g1, _ = g_factors(KerrScenario(np.sqrt(a2), kz))
    u = -2j * np.sin(kz) * np.exp(-1j * kz)
    d_exp = a2 * u * u - 2j * kz
    w = np.conj(g1) ** 2 * (np.exp(d_exp) - 1.0)
    s = -np.expm1(-4.0 * a2 * np.sin(kz) ** 2)
    denom = 1.0 + 2.0 * (beta * np.conj(g1)).real + np.abs(beta) ** 2
    bracket = (4.0 * (beta * u * np.conj(g1)).real
               + 2.0 * (beta * beta * w).real
               + 2.0 * np.abs(beta) ** 2 * s)
    with np.errstate(invalid="ignore", divide="ignore"):
        fano = 1.0 + tau * tau * a2 * bracket / denom
    return fano, denom


def fano_values(scenario: KerrScenario, betas, tau: float = 1.0) -> np.ndarray:
    """Vectorized Fano factor over an array of shift coordinates beta."""
    fano, _ = _fano_core(scenario.abs_alpha_sq, scenario.kz, betas, tau)
    return np.asarray(fano)


def fano_displaced(scenario: KerrScenario, setting: DisplacementSetting) -> FanoReport:
    """Exact Fano factor, mean and variance of the displaced Kerr state."""
    a2 = scenario.abs_alpha_sq
    fano, denom = _fano_core(a2, scenario.kz, setting.beta, setting.tau)
    mean = setting.tau ** 2 * a2 * float(denom)
    if mean <= 0.0 or float(denom) <= 1e-15:
        raise DegenerateDenominator(
            f"mean photon number {mean} is not positive at beta = {setting.beta}")
    return FanoReport.from_fano_mean(float(fano), mean)
